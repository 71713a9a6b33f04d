use std::collections::BTreeSet;

use log::warn;
use rand::Rng;

use super::candidates::{
    addition_weights, build_motif_candidates, build_random_candidates, deletion_weights,
};
use super::sampling::{weighted_sample_without_replacement, WeightKind, WeightTable};
use super::{AugmentConfig, Infeasible, Mapping};
use crate::error::Result;
use crate::graph::{Edge, Graph};

/// Edges to add and edges to remove. Additions are never existing edges,
/// deletions always are, so the two sets are disjoint.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct EditPlan {
    pub additions: Vec<Edge>,
    pub deletions: Vec<Edge>,
}

impl EditPlan {
    /// `(E ∪ additions) \ deletions` on the same vertex set.
    pub fn apply(&self, g: &Graph) -> Graph {
        let mut set: BTreeSet<Edge> = g.edges().iter().copied().collect();
        set.extend(self.additions.iter().copied());
        for e in &self.deletions {
            set.remove(e);
        }
        Graph::from_edge_set(g.vertex_count(), set)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Augmented {
    pub graph: Graph,
    pub plan: EditPlan,
    /// The accepted deletions split a component because no connectivity
    /// preserving draw was found within the attempt budget.
    pub connectivity_relaxed: bool,
    /// Motif swaps abandoned because every edge of the chosen path had
    /// already been deleted.
    pub dropped_swaps: usize,
}

/// `⌈m·β⌉`.
pub fn modification_budget(edge_count: usize, beta: f64) -> usize {
    (edge_count as f64 * beta).ceil() as usize
}

pub fn augment_graph<R: Rng + ?Sized>(g: &Graph, cfg: &AugmentConfig, rng: &mut R) -> Result<Augmented> {
    run_mapping(cfg.mapping, g, cfg, rng)
}

/// The edit plan alone.
pub fn plan_edit<R: Rng + ?Sized>(g: &Graph, cfg: &AugmentConfig, rng: &mut R) -> Result<EditPlan> {
    augment_graph(g, cfg, rng).map(|a| a.plan)
}

/// Uniform additions over unlinked pairs, uniform deletions over edges.
pub fn random_mapping<R: Rng + ?Sized>(g: &Graph, cfg: &AugmentConfig, rng: &mut R) -> Result<Graph> {
    run_mapping(Mapping::Random, g, cfg, rng).map(|a| a.graph)
}

pub fn vertex_similarity_mapping<R: Rng + ?Sized>(
    g: &Graph,
    cfg: &AugmentConfig,
    rng: &mut R,
) -> Result<Graph> {
    run_mapping(Mapping::VertexSimilarity, g, cfg, rng).map(|a| a.graph)
}

pub fn motif_random_mapping<R: Rng + ?Sized>(g: &Graph, cfg: &AugmentConfig, rng: &mut R) -> Result<Graph> {
    run_mapping(Mapping::MotifRandom, g, cfg, rng).map(|a| a.graph)
}

pub fn motif_similarity_mapping<R: Rng + ?Sized>(
    g: &Graph,
    cfg: &AugmentConfig,
    rng: &mut R,
) -> Result<Graph> {
    run_mapping(Mapping::MotifSimilarity, g, cfg, rng).map(|a| a.graph)
}

fn run_mapping<R: Rng + ?Sized>(
    mapping: Mapping,
    g: &Graph,
    cfg: &AugmentConfig,
    rng: &mut R,
) -> Result<Augmented> {
    cfg.validate()?;
    if mapping.is_motif() {
        motif_swap(mapping.is_similarity(), g, cfg, rng)
    } else {
        global_rewire(mapping.is_similarity(), g, cfg, rng)
    }
}

/// Redraws the deletion side until the result has no more components than
/// the input, or the attempt budget is spent.
fn with_connectivity<R, F>(g: &Graph, cfg: &AugmentConfig, rng: &mut R, mut draw: F) -> Result<Augmented>
where
    R: Rng + ?Sized,
    F: FnMut(&mut R) -> Result<(EditPlan, usize)>,
{
    let base = g.component_count();
    let mut attempt = 0;
    loop {
        let (plan, dropped_swaps) = draw(rng)?;
        let graph = plan.apply(g);
        let ok = !cfg.preserve_connectivity || graph.component_count() <= base;
        if ok || attempt >= cfg.max_resample_attempts {
            if !ok {
                warn!(
                    "no connectivity-preserving deletion found in {} attempts; keeping the last draw",
                    attempt + 1
                );
            }
            return Ok(Augmented {
                graph,
                plan,
                connectivity_relaxed: !ok,
                dropped_swaps,
            });
        }
        attempt += 1;
    }
}

fn global_rewire<R: Rng + ?Sized>(
    similarity: bool,
    g: &Graph,
    cfg: &AugmentConfig,
    rng: &mut R,
) -> Result<Augmented> {
    let k = modification_budget(g.edge_count(), cfg.beta);
    let cands = build_random_candidates(g);
    if k > cands.add_candidates.len() {
        return Err(Infeasible::AdditionCandidates {
            needed: k,
            available: cands.add_candidates.len(),
        }
        .into());
    }
    if k > cands.del_candidates.len() {
        return Err(Infeasible::DeletionCandidates {
            needed: k,
            available: cands.del_candidates.len(),
        }
        .into());
    }
    let (add_table, del_table) = if similarity {
        (
            addition_weights(g, &cands.add_candidates),
            deletion_weights(g, &cands.del_candidates),
        )
    } else {
        (
            WeightTable::uniform(cands.add_candidates, WeightKind::Addition),
            WeightTable::uniform(cands.del_candidates, WeightKind::Deletion),
        )
    };
    let additions = weighted_sample_without_replacement(&add_table, k, rng)?;
    with_connectivity(g, cfg, rng, |rng| {
        let deletions = weighted_sample_without_replacement(&del_table, k, rng)?;
        Ok((
            EditPlan {
                additions: additions.clone(),
                deletions,
            },
            0,
        ))
    })
}

fn motif_swap<R: Rng + ?Sized>(
    similarity: bool,
    g: &Graph,
    cfg: &AugmentConfig,
    rng: &mut R,
) -> Result<Augmented> {
    let l = cfg.motif_length;
    let cands = build_motif_candidates(g, l);
    if cands.is_empty() {
        return Err(Infeasible::NoMotifCandidates { motif_length: l }.into());
    }
    let k = modification_budget(g.edge_count(), cfg.beta).min(cands.len());
    let add_table = if similarity {
        addition_weights(g, &cands)
    } else {
        WeightTable::uniform(cands, WeightKind::Addition)
    };
    let additions = weighted_sample_without_replacement(&add_table, k, rng)?;
    // Motifs of the original graph closed by each addition.
    let motifs: Vec<Vec<Vec<Edge>>> = additions
        .iter()
        .map(|e| {
            g.find_paths(e.u(), e.v(), l)
                .map(|ps| ps.iter().map(|p| p.edges()).collect())
        })
        .collect::<Result<_>>()?;

    with_connectivity(g, cfg, rng, |rng| {
        let mut plan = EditPlan::default();
        let mut used = BTreeSet::new();
        let mut dropped = 0;
        for (add, paths) in additions.iter().zip(&motifs) {
            let path = &paths[rng.gen_range(0..paths.len())];
            let table = if similarity {
                deletion_weights(g, path)
            } else {
                WeightTable::uniform(path.iter().copied(), WeightKind::Deletion)
            };
            let free: Vec<(Edge, f64)> = table
                .entries()
                .iter()
                .filter(|(e, _)| !used.contains(e))
                .copied()
                .collect();
            if free.is_empty() {
                dropped += 1;
                continue;
            }
            let free = WeightTable::new(free, WeightKind::Deletion)?;
            let del = weighted_sample_without_replacement(&free, 1, rng)?[0];
            used.insert(del);
            plan.additions.push(*add);
            plan.deletions.push(del);
        }
        Ok((plan, dropped))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seed::rng_from_seed;

    fn g(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::from_edges(n, edges.iter().copied()).unwrap()
    }

    fn cfg(mapping: Mapping, beta: f64) -> AugmentConfig {
        AugmentConfig {
            mapping,
            beta,
            preserve_connectivity: false,
            ..AugmentConfig::default()
        }
    }

    #[test]
    fn budget_arithmetic() {
        assert_eq!(modification_budget(20, 0.15), 3);
        assert_eq!(modification_budget(2, 0.01), 1);
        assert_eq!(modification_budget(0, 0.5), 0);
        assert_eq!(modification_budget(10, 1.0), 10);
    }

    #[test]
    fn random_on_path_adds_the_only_pair() {
        let p = g(3, &[(0, 1), (1, 2)]);
        let mut rng = rng_from_seed(9);
        for _ in 0..50 {
            let out = random_mapping(&p, &cfg(Mapping::Random, 0.1), &mut rng).unwrap();
            assert_eq!(out.edge_count(), 2);
            assert!(out.has_edge(0, 2));
            assert!(out.has_edge(0, 1) ^ out.has_edge(1, 2));
        }
    }

    #[test]
    fn random_reports_which_side_ran_out() {
        let k3 = g(3, &[(0, 1), (1, 2), (0, 2)]);
        let err = random_mapping(&k3, &cfg(Mapping::Random, 0.1), &mut rng_from_seed(0)).unwrap_err();
        assert!(matches!(
            err,
            crate::Error::Infeasible(Infeasible::AdditionCandidates { needed: 1, available: 0 })
        ));
        // 4 vertices, 5 edges: one unlinked pair, budget 5.
        let near = g(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (2, 3)]);
        let err = random_mapping(&near, &cfg(Mapping::Random, 1.0), &mut rng_from_seed(0)).unwrap_err();
        assert!(matches!(
            err,
            crate::Error::Infeasible(Infeasible::AdditionCandidates { needed: 5, available: 1 })
        ));
    }

    #[test]
    fn motif_on_triangle_is_infeasible() {
        let k3 = g(3, &[(0, 1), (1, 2), (0, 2)]);
        for m in [Mapping::MotifRandom, Mapping::MotifSimilarity] {
            let err = augment_graph(&k3, &cfg(m, 0.15), &mut rng_from_seed(0)).unwrap_err();
            assert!(matches!(
                err,
                crate::Error::Infeasible(Infeasible::NoMotifCandidates { motif_length: 2 })
            ));
        }
    }

    #[test]
    fn motif_swap_on_path() {
        let p = g(3, &[(0, 1), (1, 2)]);
        for m in [Mapping::MotifRandom, Mapping::MotifSimilarity] {
            let out = augment_graph(&p, &cfg(m, 0.15), &mut rng_from_seed(4)).unwrap();
            assert_eq!(out.plan.additions, vec![Edge::ordered(0, 2)]);
            assert_eq!(out.plan.deletions.len(), 1);
            assert_eq!(out.graph.edge_count(), 2);
            assert!(out.graph.is_connected());
        }
    }

    #[test]
    fn open_quad_candidate() {
        let p4 = g(4, &[(0, 1), (1, 2), (2, 3)]);
        let c = AugmentConfig {
            motif_length: 3,
            ..cfg(Mapping::MotifRandom, 0.3)
        };
        let out = augment_graph(&p4, &c, &mut rng_from_seed(1)).unwrap();
        assert_eq!(out.plan.additions, vec![Edge::ordered(0, 3)]);
    }

    #[test]
    fn connectivity_is_kept_on_a_tree_plus_one() {
        // A 6-cycle with a tail: random deletions easily cut the tail off.
        let gr = g(8, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (5, 6), (6, 7)]);
        let c = AugmentConfig {
            preserve_connectivity: true,
            ..cfg(Mapping::Random, 0.25)
        };
        let mut rng = rng_from_seed(77);
        for _ in 0..200 {
            let out = augment_graph(&gr, &c, &mut rng).unwrap();
            assert!(out.connectivity_relaxed || out.graph.is_connected());
            assert_eq!(out.graph.edge_count(), gr.edge_count());
        }
    }

    #[test]
    fn same_seed_same_graph() {
        let gr = crate::generate::barabasi_albert(25, 2, &mut rng_from_seed(3));
        for m in Mapping::ALL {
            let a = augment_graph(&gr, &cfg(m, 0.2), &mut rng_from_seed(11)).unwrap();
            let b = augment_graph(&gr, &cfg(m, 0.2), &mut rng_from_seed(11)).unwrap();
            assert_eq!(a, b);
        }
    }
}
