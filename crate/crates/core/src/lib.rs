//! Structural-mapping augmentation and label-reliability filtration for
//! small graph-classification datasets.
//!
//! The pieces compose into one loop ([`evolve::m_evolve`]): train a
//! classifier, generate a pool of edge-rewired copies of the training graphs
//! ([`augment`]), keep only the copies whose inherited label the current
//! classifier finds reliable ([`filtration`]), merge and retrain.
//!
//! ```
//! use mevolve::augment::{augment_graph, AugmentConfig, Mapping};
//! use mevolve::graph::Graph;
//! use mevolve::seed::rng_from_seed;
//!
//! let g = Graph::from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]).unwrap();
//! let cfg = AugmentConfig { beta: 0.3, ..AugmentConfig::new(Mapping::MotifSimilarity) };
//! let out = augment_graph(&g, &cfg, &mut rng_from_seed(7)).unwrap();
//! assert_eq!(out.graph.edge_count(), g.edge_count());
//! ```

pub mod augment;
pub mod cli;
pub mod data;
pub mod error;
pub mod evolve;
pub mod filtration;
pub mod generate;
pub mod graph;
pub mod models;
pub mod seed;

pub use error::{Error, Result};
pub use graph::{Edge, Graph, Path};
