//! Cyclic covers of the line: binary forms, roots of line bundles, rational
//! Picard relations and Hodge integrals.

mod forms;
mod hodge;
mod pic;

pub use forms::{
    classify, degree_by_fractions, incidence, root_exponents, stratum_dim, viete, BinaryForm,
    PartitionType, Poly, RootExponents,
};
pub use hodge::{
    base_automorphisms, hodge_recursion, hyperelliptic_integral, hyperelliptic_integral_pipeline,
    mu_top, psi_integral, psi_integral_string, sinc_half_series, tau, tau_recursive,
    HodgeIntegralKey, Normalization, Space,
};
pub use pic::{
    branch_count, collect_lambda, cornalba_harris, default_datum, lambda_relation, locus_forms,
    locus_from_marked, pic_normalize, summed_relation, CornalbaHarris, CyclicContext, LocusForm,
    PicElement, Sym,
};
