//! Edge 2-colourings of the hypercube `Q_n` and antipodal geodesics with few
//! colour changes.
//!
//! * [`hypercube`]: vertices, edges, bit-packed colourings, geodesics, 3-subcubes.
//! * [`codec`]: the text colouring format and seeded random colourings.
//! * [`q3`]: good/bad 3-cubes, exhaustive lemma sweeps, local geodesic selectors.
//! * [`construction`]: modified antipodal geodesics and their exact expected
//!   number of colour changes.
//! * [`search`]: exact minimum colour-change antipodal geodesics.

pub mod codec;
pub mod construction;
pub mod error;
pub mod hypercube;
pub mod q3;
pub mod search;

/// Exact rational used for all probabilities and expectations.
pub type Fraction = num_rational::Ratio<u128>;

pub use construction::{
    choose_variant, construction_report, exact_expectation, exact_stats, f_geodesic, f_value,
    junction_census, modify_geodesic, monte_carlo_mean, BlockDecomposition, ConstructionReport,
    Expectation, FVariant, JunctionCensus, ModifiedGeodesic, MonteCarloEstimate, SubcubeStats,
    VariantSource,
};
pub use error::{Error, Result};
pub use hypercube::{
    colour_changes, edge_index, enumerate_geodesics, subcube_of_pair, vertex_ops, Colour,
    Direction, EdgeColouring, Geodesic, Parity, SubcubeEmbedding, Vertex, MAX_DIMENSION,
};
pub use q3::{classify, Classification, Q3Colouring, Q3Table, SelectorEntry};
pub use search::{
    adversary_search, brute_force_min, min_antipodal_changes, min_changes_from, AdversaryOutcome,
    MinChangesResult,
};

/// `C(n, k)`; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}
