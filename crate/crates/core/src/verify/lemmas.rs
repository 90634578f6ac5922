//! Orientation bound, sink-source counts and pendant deletion, checked on
//! every connected graph of small order.

use std::cmp::Ordering;

use super::{check_cap, Builder, EqualityCase, Grid, Outcome, VerificationReport};
use crate::cactus::CactusGenerator;
use crate::error::Result;
use crate::graph::{bipartition, connected_graphs, orient_mask, Graph};
use crate::index::{tables, with_tables, Exponent, PowerTable, Weight};
use crate::par::{map, Parallelism};
use crate::search::{fold_orientations, sink_source_orientations, Snapshot};

/// Largest order at which every connected graph is scanned; above it only
/// cacti are.
const ALL_GRAPHS_MAX: usize = 6;
const LEMMA_CAP: usize = 7;

/// Connected graphs up to `n_max`: all of them up to order six, cacti
/// beyond.
fn graph_family(n_max: usize, par: Parallelism) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    for n in 1..=n_max.min(ALL_GRAPHS_MAX) {
        out.extend(connected_graphs(n)?);
    }
    let mut gen = CactusGenerator::new(par);
    for n in ALL_GRAPHS_MAX + 1..=n_max {
        for r in 0..=(n - 1) / 2 {
            out.extend(gen.cacti(n, r)?.iter().cloned());
        }
    }
    Ok(out)
}

fn all_edges(g: &Graph) -> Vec<usize> {
    (0..g.m()).collect()
}

fn units<'a>(graphs: &'a [Graph], a_list: &'a [Exponent]) -> Vec<(&'a Graph, &'a Exponent)> {
    graphs
        .iter()
        .flat_map(|g| a_list.iter().map(move |a| (g, a)))
        .collect()
}

/// `R(D) <= R(G)/2` for every orientation, with equality exactly on the
/// sink-source orientations.
pub fn verify_orientation_bound(n_max: usize, a_list: &[Exponent], par: Parallelism) -> Result<VerificationReport> {
    check_cap("n_max", n_max, LEMMA_CAP)?;
    let mut b = Builder::new(
        "orientation-bound",
        Grid {
            n_max: Some(n_max),
            a: a_list.to_vec(),
            ..Grid::default()
        },
    );
    if n_max > ALL_GRAPHS_MAX {
        b.note(format!("orders above {ALL_GRAPHS_MAX} are covered for cacti only"));
    }
    let graphs = graph_family(n_max, par)?;
    let outcomes = map(&units(&graphs, a_list), par, |&(g, a)| {
        with_tables!(tables(a, g.max_degree(), 2 * g.n()), t => bound_unit(g, a, &t))
    });
    for o in outcomes {
        b.absorb(o);
    }
    Ok(b.finish())
}

fn bound_unit<W: Weight>(g: &Graph, a: &Exponent, t: &PowerTable<W>) -> Outcome {
    let zeros = vec![0; g.n()];
    let half_graph = t.vertex_sum(&g.degrees(), &zeros);
    let exact = a.is_exact();
    let (mut o, equal) = fold_orientations(
        g,
        &all_edges(g),
        t,
        Parallelism::Sequential,
        || (Outcome::default(), 0u64),
        |(o, equal): &mut (Outcome, u64), s: &Snapshot<'_, W>| {
            o.instances += 1;
            let cmp = s.value.cmp_w(&half_graph);
            let sink_source = s.mixed == 0;
            if cmp == Ordering::Greater {
                o.violate(g.to_string(), format!("{} exceeds R(G)/2", orient_mask(g, s.mask)));
            } else if exact && (cmp == Ordering::Equal) != sink_source {
                o.violate(
                    g.to_string(),
                    format!(
                        "{}: equality = {}, sink-source = {}",
                        orient_mask(g, s.mask),
                        cmp == Ordering::Equal,
                        sink_source
                    ),
                );
            } else if exact && sink_source {
                *equal += 1;
            }
        },
        |(mut x, ex), (y, ey)| {
            x.instances += y.instances;
            x.violations.extend(y.violations);
            (x, ex + ey)
        },
    );
    if equal > 0 {
        o.equality.push(EqualityCase {
            instance: g.to_string(),
            a: a.to_string(),
            tag: "sink-source".into(),
            count: equal,
        });
    }
    o
}

/// Sink-source orientations: two on bipartite graphs, none otherwise,
/// counted both from the bipartition and by filtering all orientations.
pub fn verify_sink_source_count(n_max: usize, par: Parallelism) -> Result<VerificationReport> {
    check_cap("n_max", n_max, LEMMA_CAP)?;
    let mut b = Builder::new(
        "sink-source",
        Grid {
            n_max: Some(n_max),
            ..Grid::default()
        },
    );
    let mut graphs = Vec::new();
    for n in 1..=n_max {
        graphs.extend(connected_graphs(n)?);
    }
    // The index plays no role here; the walk is only used for its
    // mixed-vertex count.
    let a = Exponent::exact(1).expect("valid exponent");
    let outcomes = map(&graphs, par, |g| {
        let filtered = with_tables!(tables(&a, g.max_degree(), 2 * g.n()), t => {
            fold_orientations(
                g,
                &all_edges(g),
                &t,
                Parallelism::Sequential,
                || 0u64,
                |c: &mut u64, s| *c += u64::from(s.mixed == 0),
                |x, y| x + y,
            )
        });
        let constructive = sink_source_orientations(g).len() as u64;
        let expected = if bipartition(g).is_some() { 2 } else { 0 };
        let mut o = Outcome {
            instances: 1 << g.m(),
            ..Outcome::default()
        };
        // A single vertex has one orientation, which is trivially
        // sink-source; the statement concerns graphs with edges.
        if g.m() > 0 && (filtered != expected || constructive != expected) {
            o.violate(
                g.to_string(),
                format!("expected {expected}, filtered {filtered}, constructive {constructive}"),
            );
        }
        o
    });
    for o in outcomes {
        b.absorb(o);
    }
    b.note("graphs without edges are skipped");
    Ok(b.finish())
}

/// Deleting a pendant `u` at `v` lowers the index by at most
/// `(1 + d^(a+1) - (d-1)^(a+1)) / 2`, `d = d_G(v)`, with equality exactly
/// when `v` is a source or a sink.
pub fn verify_pendant_deletion(n_max: usize, a_list: &[Exponent], par: Parallelism) -> Result<VerificationReport> {
    check_cap("n_max", n_max, LEMMA_CAP)?;
    let mut b = Builder::new(
        "pendant",
        Grid {
            n_max: Some(n_max),
            a: a_list.to_vec(),
            ..Grid::default()
        },
    );
    if n_max > ALL_GRAPHS_MAX {
        b.note(format!("orders above {ALL_GRAPHS_MAX} are covered for cacti only"));
    }
    let graphs = graph_family(n_max, par)?;
    let mut jobs = Vec::new();
    for g in &graphs {
        for u in (0..g.n()).filter(|&u| g.degree(u) == 1) {
            for a in a_list {
                jobs.push((g, u, a));
            }
        }
    }
    let outcomes = map(&jobs, par, |&(g, u, a)| {
        with_tables!(tables(a, g.max_degree(), 2 * g.n() + 4), t => pendant_unit(g, u, a, &t))
    });
    for o in outcomes {
        b.absorb(o);
    }
    Ok(b.finish())
}

fn pendant_unit<W: Weight>(g: &Graph, u: usize, a: &Exponent, t: &PowerTable<W>) -> Outcome {
    let v = g.neighbors(u)[0];
    let d = g.degree(v);
    let instance = format!("{g} pendant {u} at {v}");
    let exact = a.is_exact();
    let (mut outcome, eq) = fold_orientations(
        g,
        &all_edges(g),
        t,
        Parallelism::Sequential,
        || (Outcome::default(), [0u64; 2]),
        |(o, eq): &mut (Outcome, [u64; 2]), s: &Snapshot<'_, W>| {
            o.instances += 1;
            let (p, q) = (s.out[v], s.inn[v]);
            let (p2, q2) = if s.out[u] == 1 { (p, q - 1) } else { (p - 1, q) };
            let v_term = |x: usize, y: usize| t.vertex[x].add(&t.vertex[y]);
            // Both sides doubled and rearranged so no term is negative.
            let reduced = s.value.add(&v_term(p2, q2)).sub(&v_term(p, q)).sub(&v_term(s.out[u], s.inn[u]));
            let lhs = s.value.add(&t.vertex[d - 1]);
            let rhs = reduced.add(&t.vertex[1]).add(&t.vertex[d]);
            let cmp = lhs.cmp_w(&rhs);
            let saturated = p.max(q) == d;
            if cmp == Ordering::Greater {
                o.violate(instance.clone(), format!("{} exceeds the bound", orient_mask(g, s.mask)));
            } else if exact && (cmp == Ordering::Equal) != saturated {
                o.violate(
                    instance.clone(),
                    format!(
                        "{}: equality = {}, max(d+, d-) = d = {}",
                        orient_mask(g, s.mask),
                        cmp == Ordering::Equal,
                        saturated
                    ),
                );
            } else if exact && saturated {
                eq[usize::from(q == d)] += 1;
            }
        },
        |(mut x, mut ex), (y, ey)| {
            x.instances += y.instances;
            x.violations.extend(y.violations);
            ex[0] += ey[0];
            ex[1] += ey[1];
            (x, ex)
        },
    );
    for (i, tag) in ["d+(v)=d(v)", "d-(v)=d(v)"].into_iter().enumerate() {
        if eq[i] > 0 {
            outcome.equality.push(EqualityCase {
                instance: instance.clone(),
                a: a.to_string(),
                tag: tag.into(),
                count: eq[i],
            });
        }
    }
    outcome
}
