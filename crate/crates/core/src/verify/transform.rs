//! The two local transformations used to shrink a cactus with minimum
//! degree two. Both act on a path `u1 - u0 - u2` where `u0` and `u1` have
//! degree 2 and `d = d_G(u2) >= 3`:
//!
//! * A (`u1u2` not an edge): `G' = G - u0 + u1u2`, and `D'` agrees with `D`
//!   on every shared edge while the new edge takes either direction;
//! * B (`u1u2` an edge, so `u0 u1 u2` is a triangle): `G' = G - u0 - u1`,
//!   `D'` the restriction of `D`.

use std::cmp::Ordering;

use super::{check_cap, Builder, EqualityCase, Grid, Outcome, VerificationReport};
use crate::cactus::CactusGenerator;
use crate::error::Result;
use crate::graph::{orient_mask, Graph};
use crate::index::{tables, with_tables, Exponent, PowerTable, Weight};
use crate::par::{map, Parallelism};
use crate::search::{fold_orientations, Snapshot};

const TRANSFORM_CAP: usize = 8;
const MIN_ORDER: usize = 6;
const MIN_CYCLES: usize = 2;

/// `(u0, u1, u2)` with `d(u0) = d(u1) = 2`, `u0u1` an edge, `u2` the other
/// neighbour of `u0`, `d(u2) >= 3`, and `u1u2` an edge exactly when
/// `triangle` is set.
fn triples(g: &Graph, triangle: bool) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for u0 in (0..g.n()).filter(|&u| g.degree(u) == 2) {
        for &u1 in g.neighbors(u0) {
            if g.degree(u1) != 2 {
                continue;
            }
            let u2 = g.neighbors(u0).iter().copied().find(|&w| w != u1).expect("degree 2");
            if g.degree(u2) >= 3 && g.has_edge(u1, u2) == triangle {
                out.push((u0, u1, u2));
            }
        }
    }
    out
}

pub fn transformation_a_triples(g: &Graph) -> Vec<(usize, usize, usize)> {
    triples(g, false)
}

pub fn transformation_b_triples(g: &Graph) -> Vec<(usize, usize, usize)> {
    triples(g, true)
}

/// Whether `x -> y` in the orientation with direction mask `mask`.
fn arc(g: &Graph, mask: u64, x: usize, y: usize) -> bool {
    let e = g.edge_index(x, y).expect("edge present");
    let forward = mask >> e & 1 == 0;
    forward == (x < y)
}

/// Cacti meeting the global hypotheses: order at least 6, at least two
/// cycles, minimum degree at least 2.
fn hypothesis_cacti(n_max: usize, par: Parallelism) -> Result<Vec<(usize, usize, Graph)>> {
    let mut gen = CactusGenerator::new(par);
    let mut out = Vec::new();
    for n in MIN_ORDER..=n_max {
        for r in MIN_CYCLES..=(n - 1) / 2 {
            for g in gen.cacti(n, r)? {
                if g.min_degree() >= 2 {
                    out.push((n, r, g.clone()));
                }
            }
        }
    }
    Ok(out)
}

type UnitFn<W> = fn(&Graph, (usize, usize, usize), &Exponent, &PowerTable<W>) -> Outcome;

fn run(
    claim: &str,
    n_max: usize,
    a_list: &[Exponent],
    par: Parallelism,
    triangle: bool,
) -> Result<VerificationReport> {
    check_cap("n_max", n_max, TRANSFORM_CAP)?;
    let mut b = Builder::new(
        claim,
        Grid {
            n_max: Some(n_max),
            a: a_list.to_vec(),
            ..Grid::default()
        },
    );
    let graphs = hypothesis_cacti(n_max, par)?;
    let mut jobs = Vec::new();
    let mut first: Option<(usize, usize)> = None;
    for (n, r, g) in &graphs {
        for t in triples(g, triangle) {
            first = first.or(Some((*n, *r)));
            for a in a_list {
                jobs.push((g, t, a));
            }
        }
    }
    let outcomes = map(&jobs, par, |&(g, t, a)| {
        with_tables!(tables(a, g.max_degree(), 2 * g.n() + 8), tb => {
            let unit: UnitFn<_> = if triangle { unit_b } else { unit_a };
            unit(g, t, a, &tb)
        })
    });
    for o in outcomes {
        b.absorb(o);
    }
    b.note(format!(
        "{} configurations in {} cacti",
        jobs.len() / a_list.len().max(1),
        graphs.len()
    ));
    match first {
        Some((n, r)) => b.note(format!("smallest qualifying instance: n = {n}, r = {r}")),
        None => b.note("no qualifying instance in the grid"),
    }
    b.note("exponents that are not integers are checked for the inequality only");
    Ok(b.finish())
}

pub fn verify_transformation_a(n_max: usize, a_list: &[Exponent], par: Parallelism) -> Result<VerificationReport> {
    run("transform-a", n_max, a_list, par, false)
}

pub fn verify_transformation_b(n_max: usize, a_list: &[Exponent], par: Parallelism) -> Result<VerificationReport> {
    run("transform-b", n_max, a_list, par, true)
}

const TAGS_A: [&str; 4] = [
    "u1u0,u2u0 in D; u1u2 in D'; d+(u2)=d",
    "u0u1,u0u2 in D; u2u1 in D'; d-(u2)=d",
    "u0u1,u2u0 in D; u1u2 in D'; d-(u1)=d(u1), d+(u2)=d",
    "u1u0,u0u2 in D; u2u1 in D'; d+(u1)=d(u1), d-(u2)=d",
];

const TAGS_B: [&str; 2] = ["d+(u2)=d", "d-(u2)=d"];

fn merge_counts<const K: usize>((mut x, mut cx): (Outcome, [u64; K]), (y, cy): (Outcome, [u64; K])) -> (Outcome, [u64; K]) {
    x.instances += y.instances;
    x.violations.extend(y.violations);
    for i in 0..K {
        cx[i] += cy[i];
    }
    (x, cx)
}

fn attach_tags<const K: usize>(mut o: Outcome, counts: [u64; K], tags: [&str; K], instance: &str, a: &Exponent) -> Outcome {
    for (tag, count) in tags.iter().zip(counts) {
        if count > 0 {
            o.equality.push(EqualityCase {
                instance: instance.to_string(),
                a: a.to_string(),
                tag: tag.to_string(),
                count,
            });
        }
    }
    o
}

/// Doubled index of `D'` for transformation A, from that of `D`.
pub(crate) fn reduced_a<W: Weight>(
    t: &PowerTable<W>,
    s: &Snapshot<'_, W>,
    (u0, u1, u2): (usize, usize, usize),
    a10: bool,
    a20: bool,
    new12: bool,
) -> W {
    let v = |x: usize| &t.vertex[x];
    let (p1, q1, p2, q2) = (s.out[u1], s.inn[u1], s.out[u2], s.inn[u2]);
    let p1n = p1 - usize::from(a10) + usize::from(new12);
    let q1n = q1 - usize::from(!a10) + usize::from(!new12);
    let p2n = p2 - usize::from(a20) + usize::from(!new12);
    let q2n = q2 - usize::from(!a20) + usize::from(new12);
    let old = v(s.out[u0]).add(v(s.inn[u0])).add(v(p1)).add(v(q1)).add(v(p2)).add(v(q2));
    let new = v(p1n).add(v(q1n)).add(v(p2n)).add(v(q2n));
    s.value.add(&new).sub(&old)
}

/// Doubled index of `D'` for transformation B, from that of `D`.
pub(crate) fn reduced_b<W: Weight>(
    t: &PowerTable<W>,
    s: &Snapshot<'_, W>,
    (u0, u1, u2): (usize, usize, usize),
    a20: bool,
    a21: bool,
) -> W {
    let v = |x: usize| &t.vertex[x];
    let (p2, q2) = (s.out[u2], s.inn[u2]);
    let p2n = p2 - usize::from(a20) - usize::from(a21);
    let q2n = q2 - usize::from(!a20) - usize::from(!a21);
    let old = v(s.out[u0])
        .add(v(s.inn[u0]))
        .add(v(s.out[u1]))
        .add(v(s.inn[u1]))
        .add(v(p2))
        .add(v(q2));
    s.value.add(&v(p2n).add(v(q2n))).sub(&old)
}

fn unit_a<W: Weight>(g: &Graph, tri: (usize, usize, usize), a: &Exponent, t: &PowerTable<W>) -> Outcome {
    let (u0, u1, u2) = tri;
    let d = g.degree(u2);
    let exact = a.is_exact();
    let instance = format!("{g} (u0,u1,u2)=({u0},{u1},{u2})");
    let free: Vec<usize> = (0..g.m()).collect();
    let (o, counts) = fold_orientations(
        g,
        &free,
        t,
        Parallelism::Sequential,
        || (Outcome::default(), [0u64; 4]),
        |(o, counts): &mut (Outcome, [u64; 4]), s: &Snapshot<'_, W>| {
            let a10 = arc(g, s.mask, u1, u0);
            let a20 = arc(g, s.mask, u2, u0);
            let (p1, q1, p2, q2) = (s.out[u1], s.inn[u1], s.out[u2], s.inn[u2]);
            for new12 in [true, false] {
                o.instances += 1;
                let reduced = reduced_a(t, s, tri, a10, a20, new12);
                let lhs = s.value.add(&t.vertex[1]).add(&t.vertex[d - 1]);
                let rhs = reduced.add(&t.vertex[2]).add(&t.vertex[d]);
                let cmp = lhs.cmp_w(&rhs);
                let configs = [
                    a10 && a20 && new12 && p2 == d,
                    !a10 && !a20 && !new12 && q2 == d,
                    !a10 && a20 && new12 && q1 == 2 && p2 == d,
                    a10 && !a20 && !new12 && p1 == 2 && q2 == d,
                ];
                let matched = configs.iter().position(|&c| c);
                let pair = || {
                    let dir = if new12 { "u1u2" } else { "u2u1" };
                    format!("D = {}, D' has {dir}", orient_mask(g, s.mask))
                };
                if cmp == Ordering::Greater {
                    o.violate(instance.clone(), format!("{}: bound exceeded", pair()));
                } else if exact && (cmp == Ordering::Equal) != matched.is_some() {
                    o.violate(
                        instance.clone(),
                        format!(
                            "{}: equality = {}, configuration = {:?}",
                            pair(),
                            cmp == Ordering::Equal,
                            matched
                        ),
                    );
                } else if let (true, Some(i)) = (exact, matched) {
                    counts[i] += 1;
                }
            }
        },
        merge_counts,
    );
    attach_tags(o, counts, TAGS_A, &instance, a)
}

fn unit_b<W: Weight>(g: &Graph, tri: (usize, usize, usize), a: &Exponent, t: &PowerTable<W>) -> Outcome {
    let (u0, u1, u2) = tri;
    let d = g.degree(u2);
    let exact = a.is_exact();
    let instance = format!("{g} (u0,u1,u2)=({u0},{u1},{u2})");
    let free: Vec<usize> = (0..g.m()).collect();
    let two = W::small(2);
    let (o, counts) = fold_orientations(
        g,
        &free,
        t,
        Parallelism::Sequential,
        || (Outcome::default(), [0u64; 2]),
        |(o, counts): &mut (Outcome, [u64; 2]), s: &Snapshot<'_, W>| {
            o.instances += 1;
            let a20 = arc(g, s.mask, u2, u0);
            let a21 = arc(g, s.mask, u2, u1);
            let reduced = reduced_b(t, s, tri, a20, a21);
            let lhs = s.value.add(&t.vertex[d - 2]);
            let rhs = reduced.add(&t.vertex[2]).add(&two).add(&t.vertex[d]);
            let cmp = lhs.cmp_w(&rhs);
            let source = s.out[u2] == d;
            let sink = s.inn[u2] == d;
            if cmp == Ordering::Greater {
                o.violate(instance.clone(), format!("D = {}: bound exceeded", orient_mask(g, s.mask)));
            } else if exact && (cmp == Ordering::Equal) != (source || sink) {
                o.violate(
                    instance.clone(),
                    format!(
                        "D = {}: equality = {}, u2 source = {source}, u2 sink = {sink}",
                        orient_mask(g, s.mask),
                        cmp == Ordering::Equal
                    ),
                );
            } else if exact && source {
                counts[0] += 1;
            } else if exact && sink {
                counts[1] += 1;
            }
        },
        merge_counts,
    );
    attach_tags(o, counts, TAGS_B, &instance, a)
}
