//! The maximum over all orientations of all cacti of given order and cycle
//! count, its attainment, and the small catalogs behind the base cases.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use super::{check_cap, Builder, EqualityCase, Grid, MaxRow, Outcome, VerificationReport};
use crate::cactus::{extremal_set, fixtures, CactusGenerator};
use crate::error::Result;
use crate::graph::{canonical_label, orient_mask, CanonicalLabel, Graph};
use crate::index::{
    doubled_closed_form, index_digraph, index_graph, tables, theorem_bound, with_tables, Exponent, IndexValue,
    PowerTable, Weight,
};
use crate::par::{map, Parallelism};
use crate::search::{enumerate_orientations, fold_orientations, Best, Snapshot};

const THEOREM_N_CAP: usize = 8;
const THEOREM_R_CAP: usize = 3;
const TREE_N_MAX: usize = 9;
const UNICYCLIC_N_MAX: usize = 8;

struct GraphScan {
    best: IndexValue,
    labels: BTreeSet<CanonicalLabel>,
    raw: u64,
    outcome: Outcome,
}

/// Every orientation of `g` against the closed-form bound for `(n, r)`,
/// with the maximising classes.
fn scan_graph(g: &Graph, r: usize, a: &Exponent) -> Result<GraphScan> {
    with_tables!(tables(a, g.n().max(3), 2 * g.n() + 2 * r + 8), t => scan_with(g, r, &t))
}

fn scan_with<W: Weight>(g: &Graph, r: usize, t: &PowerTable<W>) -> Result<GraphScan> {
    let n = g.n();
    let mut bound = t.vertex[n - 1].add(&W::small((n - 1) as u64));
    for _ in 0..r {
        bound = bound.add(&t.vertex[2]);
    }
    let free: Vec<usize> = (0..g.m()).collect();
    let (best, outcome) = fold_orientations(
        g,
        &free,
        t,
        Parallelism::Sequential,
        || (Best::new(), Outcome::default()),
        |(best, o): &mut (Best<W>, Outcome), s: &Snapshot<'_, W>| {
            o.instances += 1;
            if s.value.cmp_w(&bound) == Ordering::Greater {
                o.violate(
                    g.to_string(),
                    format!("{} has index {} above the bound", orient_mask(g, s.mask), s.value.to_index()),
                );
            }
            best.offer(s.mask, s.value);
        },
        |(bx, mut ox), (by, oy)| {
            ox.instances += oy.instances;
            ox.violations.extend(oy.violations);
            (bx.merge(by), ox)
        },
    );
    let (value, masks) = best.finish();
    let labels = masks
        .iter()
        .map(|&m| canonical_label(&orient_mask(g, m)))
        .collect::<Result<BTreeSet<_>>>()?;
    Ok(GraphScan {
        best: value.expect("at least one orientation").to_index(),
        labels,
        raw: masks.len() as u64,
        outcome,
    })
}

/// Maximum over all orientations of all `graphs` (the cacti of order `n`
/// with `r` cycles) compared with the bound and the extremal set.
fn extremal_row(graphs: &[Graph], n: usize, r: usize, a: &Exponent, par: Parallelism) -> Result<(MaxRow, Outcome)> {
    let scans = map(graphs, par, |g| scan_graph(g, r, a))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let bound = theorem_bound(n, r, a)?;
    let mut outcome = Outcome::default();
    let mut global: Option<IndexValue> = None;
    for s in &scans {
        if global.as_ref().is_none_or(|g| s.best.compare(g) == Ordering::Greater) {
            global = Some(s.best.clone());
        }
    }
    let global = global.expect("at least one cactus");
    let mut labels = BTreeSet::new();
    let mut raw = 0;
    for s in scans {
        if s.best.compare(&global) == Ordering::Equal {
            labels.extend(s.labels);
            raw += s.raw;
        }
        outcome.instances += s.outcome.instances;
        outcome.violations.extend(s.outcome.violations);
    }
    let attained = global.compare(&bound) == Ordering::Equal;
    let matched = if a.is_exact() {
        let expected: BTreeSet<_> = extremal_set(n, r, a)?.labels()?.into_iter().collect();
        attained && labels == expected
    } else {
        attained
    };
    if a.is_exact() && matched {
        outcome.equality.push(EqualityCase {
            instance: format!("n={n} r={r}"),
            a: a.to_string(),
            tag: "extremal set".into(),
            count: raw,
        });
    }
    let row = MaxRow {
        n,
        r,
        a: *a,
        bound,
        achieved_max: global,
        witness_count: labels.len(),
        matched,
    };
    Ok((row, outcome))
}

/// Exhaustive check of the closed-form maximum over oriented cacti and of
/// its extremal digraphs.
pub fn verify_theorem(n_max: usize, r_max: usize, a_list: &[Exponent], par: Parallelism) -> Result<VerificationReport> {
    check_cap("n_max", n_max, THEOREM_N_CAP)?;
    check_cap("r_max", r_max, THEOREM_R_CAP)?;
    let mut b = Builder::new(
        "theorem",
        Grid {
            n_max: Some(n_max),
            r_max: Some(r_max),
            a: a_list.to_vec(),
            ..Grid::default()
        },
    );
    let mut gen = CactusGenerator::new(par);
    for n in 2..=n_max {
        for r in 0..=r_max.min((n - 1) / 2) {
            let graphs = gen.cacti(n, r)?.to_vec();
            for a in a_list {
                let (row, outcome) = extremal_row(&graphs, n, r, a, par)?;
                b.absorb(outcome);
                b.row(row);
            }
        }
    }
    if a_list.iter().any(|a| !a.is_exact()) {
        b.note("exponents that are not integers: bound and its attainment checked, witness sets not compared");
    }
    Ok(b.finish())
}

/// Distinct values, sorted, merging values equal within tolerance.
fn distinct(mut values: Vec<IndexValue>) -> Vec<IndexValue> {
    values.sort_by(|x, y| x.compare(y));
    values.dedup_by(|x, y| x.compare(y) == Ordering::Equal);
    values
}

fn same_values(x: &[IndexValue], y: &[IndexValue]) -> bool {
    x.len() == y.len() && x.iter().zip(y).all(|(p, q)| p.compare(q) == Ordering::Equal)
}

fn show(values: &[IndexValue]) -> String {
    let parts: Vec<String> = values.iter().map(|v| v.to_string()).collect();
    format!("{{{}}}", parts.join(", "))
}

/// Index value of every orientation, with its class label.
fn orientation_values(g: &Graph, a: &Exponent) -> Result<Vec<(IndexValue, CanonicalLabel)>> {
    enumerate_orientations(g, false)?
        .map(|d| Ok((index_digraph(&d, a), canonical_label(&d)?)))
        .collect()
}

/// Catalog values of the two small fixtures, as doubled closed forms.
pub(crate) fn g1_catalog(a: &Exponent) -> Vec<IndexValue> {
    [
        vec![(1, 3, 1), (1, 2, 1), (3, 1, 0)],
        vec![(4, 1, 0), (1, 2, 2)],
        vec![(2, 1, 0), (1, 2, 2), (1, 2, 1)],
    ]
    .iter()
    .map(|t| doubled_closed_form(t, a))
    .collect()
}

pub(crate) fn g2_catalog(a: &Exponent) -> Vec<IndexValue> {
    [
        vec![(8, 1, 0), (1, 2, 2)],
        vec![(7, 1, 0), (1, 3, 1), (1, 2, 1)],
        vec![(4, 1, 0), (1, 2, 3)],
        vec![(3, 1, 0), (6, 2, 0), (1, 3, 1)],
        vec![(12, 2, 0)],
        vec![(4, 4, 0), (2, 2, 1), (4, 1, 0)],
    ]
    .iter()
    .map(|t| doubled_closed_form(t, a))
    .collect()
}

fn catalog_g1(b: &mut Builder, a: &Exponent) -> Result<()> {
    let g = &fixtures()["G1"];
    let values = orientation_values(g, a)?;
    let found = distinct(values.iter().map(|(v, _)| v.clone()).collect());
    let catalog = distinct(g1_catalog(a));
    let instance = format!("G1 {g} a={a}");
    let mut o = Outcome {
        instances: values.len() as u64,
        ..Outcome::default()
    };
    if !same_values(&found, &catalog) {
        o.violate(
            instance.clone(),
            format!("value set {} differs from catalog {}", show(&found), show(&catalog)),
        );
    }
    for v in &catalog {
        let classes: BTreeSet<_> = values
            .iter()
            .filter(|(x, _)| x.compare(v) == Ordering::Equal)
            .map(|(_, l)| l)
            .collect();
        if classes.len() != 2 {
            o.violate(
                instance.clone(),
                format!("catalog value {v} is attained by {} classes, expected 2", classes.len()),
            );
        }
    }
    check_fixture_max(&mut o, &instance, &values, &catalog[catalog.len() - 1]);
    b.absorb(o);
    Ok(())
}

fn catalog_g2(b: &mut Builder, a: &Exponent) -> Result<()> {
    let g = &fixtures()["G2"];
    let values = orientation_values(g, a)?;
    let found = distinct(values.iter().map(|(v, _)| v.clone()).collect());
    let catalog = distinct(g2_catalog(a));
    let instance = format!("G2 {g} a={a}");
    let mut o = Outcome {
        instances: values.len() as u64,
        ..Outcome::default()
    };
    let missing: Vec<IndexValue> = catalog
        .iter()
        .filter(|v| !found.iter().any(|f| f.compare(v) == Ordering::Equal))
        .cloned()
        .collect();
    if !missing.is_empty() {
        o.violate(instance.clone(), format!("catalog values {} not realised", show(&missing)));
    }
    let extra: Vec<IndexValue> = found
        .iter()
        .filter(|f| !catalog.iter().any(|v| f.compare(v) == Ordering::Equal))
        .cloned()
        .collect();
    if !extra.is_empty() {
        b.note(format!("{instance}: values outside the catalog: {}", show(&extra)));
    }
    let max = catalog.last().expect("non-empty catalog").clone();
    check_fixture_max(&mut o, &instance, &values, &max);
    b.absorb(o);
    Ok(())
}

/// The largest catalog value is the maximum and has two classes.
fn check_fixture_max(o: &mut Outcome, instance: &str, values: &[(IndexValue, CanonicalLabel)], max: &IndexValue) {
    let top = values
        .iter()
        .map(|(v, _)| v)
        .max_by(|x, y| x.compare(y))
        .expect("orientations exist");
    if top.compare(max) != Ordering::Equal {
        o.violate(instance, format!("maximum {top} differs from {max}"));
        return;
    }
    let classes: BTreeSet<_> = values
        .iter()
        .filter(|(v, _)| v.compare(max) == Ordering::Equal)
        .map(|(_, l)| l)
        .collect();
    if classes.len() != 2 {
        o.violate(instance, format!("maximum attained by {} classes, expected 2", classes.len()));
    }
}

/// Undirected trees: `n - 1 + (n - 1)^(a+1)` is the maximum and only the
/// star attains it.
fn undirected_trees(b: &mut Builder, trees: &[Graph], n: usize, a: &Exponent) -> Result<()> {
    let bound = doubled_closed_form(&[(2, (n - 1) as u64, 1), (2 * (n as i64 - 1), 1, 0)], a);
    let star = canonical_label(&Graph::star(n))?;
    let values: Vec<IndexValue> = trees.iter().map(|t| index_graph(t, a)).collect();
    let top = values.iter().max_by(|x, y| x.compare(y)).expect("trees exist");
    let argmax = trees
        .iter()
        .zip(&values)
        .filter(|(_, v)| v.compare(top) == Ordering::Equal)
        .map(|(t, _)| canonical_label(t))
        .collect::<Result<Vec<_>>>()?;
    let mut o = Outcome {
        instances: trees.len() as u64,
        ..Outcome::default()
    };
    if top.compare(&bound) != Ordering::Equal || argmax != vec![star] {
        o.violate(
            format!("trees n={n} a={a}"),
            format!("maximum {top} by {} trees, expected {bound} by the star", argmax.len()),
        );
    }
    b.absorb(o);
    Ok(())
}

/// Trees, unicyclic cacti and the two fixtures.
pub fn verify_base_catalogs(a_list: &[Exponent], par: Parallelism) -> Result<VerificationReport> {
    let mut b = Builder::new(
        "catalogs",
        Grid {
            a: a_list.to_vec(),
            ..Grid::default()
        },
    );
    let mut gen = CactusGenerator::new(par);
    for a in a_list {
        for n in 2..=TREE_N_MAX {
            let trees = gen.cacti(n, 0)?.to_vec();
            undirected_trees(&mut b, &trees, n, a)?;
            let (row, o) = extremal_row(&trees, n, 0, a, par)?;
            b.absorb(o);
            b.row(row);
        }
        catalog_g1(&mut b, a)?;
        for n in 3..=UNICYCLIC_N_MAX {
            let graphs = gen.cacti(n, 1)?.to_vec();
            let (row, o) = extremal_row(&graphs, n, 1, a, par)?;
            b.absorb(o);
            b.row(row);
        }
        catalog_g2(&mut b, a)?;
    }
    Ok(b.finish())
}
