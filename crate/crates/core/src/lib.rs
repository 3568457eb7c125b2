//! Order-statistic product identities for power function distributions.
//!
//! For iid samples from F on (0, 1), the product of independent order
//! statistics `Y_{k:n-1} Z_{n:n}` is distributed as `X_{k:n}` exactly when F
//! is a power function distribution F(x) = x^alpha. This crate turns that
//! characterization into machinery:
//!
//! - [`dist`]: the power and Pareto families, non-power control shapes, and
//!   tabulated CDFs, with inverse-transform sampling on deterministic
//!   streams;
//! - [`order_stats`]: exact order-statistic CDFs/densities via the
//!   regularized incomplete beta, beta-transform sampling, and the
//!   generalized-order-statistics joint density;
//! - [`product`]: quadrature evaluation of the product CDF, its closed form
//!   for power bases, products of independent maxima, and the H-functional
//!   `x f(x)/F(x)` whose constancy is equivalent to the power law;
//! - [`characterize`]: numeric and Monte Carlo identity verdicts, shape
//!   estimation, and an alpha-free goodness-of-fit test;
//! - [`rss`]: ranked set sampling schemes (standard and maxima) and the
//!   maxima-product reconstruction.
//!
//! Everything stochastic is a pure function of `(seed, stream)`; see
//! [`rng::GENERATOR_VERSION`].

pub mod characterize;
pub mod dist;
pub mod error;
pub mod grid;
mod interp;
pub mod ks;
pub mod order_stats;
pub mod product;
pub mod quadrature;
pub mod rng;
pub mod rss;
pub mod special;

pub use characterize::{
    estimate_alpha, power_gof, verify_identity_mc, verify_identity_numeric, verify_maxima_chain,
    Diagnostic, IdentityReport, Verdict,
};
pub use dist::{
    integrate_pdf_mass, parse_dist_spec, sample, ContinuousDist, ExpShape, Pareto, Pow, SinShape,
    Support, TabulatedCdf, Wiggle,
};
pub use error::{Error, Result};
pub use grid::GridCdf;
pub use order_stats::{gos_joint_density, GosParams, OrderStatisticLaw};
pub use product::{
    chain_product_cdf, chain_product_grid, h_function, h_residual, power_product_closed_form,
    product_cdf, ProductChainSpec,
};
pub use quadrature::{integrate, integrate_with_breakpoints, Quad, QuadratureConfig};
pub use rng::{McConfig, GENERATOR_VERSION};
pub use rss::{generate_rss, maxima_chain_reconstruct, RssKind, RssMatrix, RssScheme, SamplePath};
