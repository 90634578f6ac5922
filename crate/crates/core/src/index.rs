//! Zeroth-order general Randić index of graphs and digraphs.
//!
//! For a digraph `D` and exponent `a >= 1`,
//! `R(D) = 1/2 * sum over arcs (u, v) of out(u)^a + in(v)^a`; for a graph
//! `G`, `R(G) = sum over vertices of d(u)^(a+1)`. With an integer exponent
//! `2 R(D)` is an integer, so exact values are stored doubled as big
//! integers and every comparison is exact. Real exponents use `f64` with
//! an absolute tolerance of [`FLOAT_TOLERANCE`].

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{Digraph, Graph};

/// Absolute tolerance for comparing floating-mode index values.
pub const FLOAT_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Mode {
    #[default]
    Exact,
    Float,
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "exact" => Ok(Mode::Exact),
            "float" => Ok(Mode::Float),
            other => Err(format!("unknown mode {other:?} (expected exact or float)")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Exponent {
    value: f64,
    exact: Option<u32>,
}

impl Exponent {
    pub fn exact(a: u32) -> Result<Self> {
        if a < 1 {
            return Err(Error::ExponentTooSmall(f64::from(a)));
        }
        Ok(Exponent {
            value: f64::from(a),
            exact: Some(a),
        })
    }

    pub fn float(a: f64) -> Result<Self> {
        if !a.is_finite() || a < 1.0 {
            return Err(Error::ExponentTooSmall(a));
        }
        Ok(Exponent {
            value: a,
            exact: None,
        })
    }

    pub fn new(a: f64, mode: Mode) -> Result<Self> {
        match mode {
            Mode::Float => Exponent::float(a),
            Mode::Exact => {
                if !a.is_finite() || a < 1.0 {
                    return Err(Error::ExponentTooSmall(a));
                }
                if a.fract() != 0.0 || a > f64::from(u32::MAX) {
                    return Err(Error::NonIntegerExponent(a));
                }
                Exponent::exact(a as u32)
            }
        }
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn as_exact(&self) -> Option<u32> {
        self.exact
    }

    pub fn is_exact(&self) -> bool {
        self.exact.is_some()
    }

    pub fn mode(&self) -> Mode {
        if self.is_exact() {
            Mode::Exact
        } else {
            Mode::Float
        }
    }

    pub fn is_one(&self) -> bool {
        self.value == 1.0
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.exact {
            Some(a) => write!(f, "{a}"),
            None => write!(f, "{}", self.value),
        }
    }
}

impl Serialize for Exponent {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.exact {
            Some(a) => s.serialize_u32(a),
            None => s.serialize_f64(self.value),
        }
    }
}

/// An index value: exactly `2 R` in exact mode, or `R` itself in floating
/// mode.
#[derive(Clone, Debug, PartialEq)]
pub enum IndexValue {
    Exact { doubled: BigUint },
    Float { value: f64 },
}

impl IndexValue {
    pub fn from_doubled(doubled: impl Into<BigUint>) -> Self {
        IndexValue::Exact {
            doubled: doubled.into(),
        }
    }

    pub fn doubled(&self) -> Option<&BigUint> {
        match self {
            IndexValue::Exact { doubled } => Some(doubled),
            IndexValue::Float { .. } => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            IndexValue::Exact { doubled } => doubled.to_f64().unwrap_or(f64::INFINITY) / 2.0,
            IndexValue::Float { value } => *value,
        }
    }

    /// Exact comparison when both sides are exact, otherwise comparison
    /// with [`FLOAT_TOLERANCE`].
    pub fn compare(&self, other: &IndexValue) -> Ordering {
        match (self, other) {
            (IndexValue::Exact { doubled: a }, IndexValue::Exact { doubled: b }) => a.cmp(b),
            _ => float_cmp(self.to_f64(), other.to_f64(), FLOAT_TOLERANCE),
        }
    }

    pub fn approx_eq(&self, other: &IndexValue) -> bool {
        self.compare(other) == Ordering::Equal
    }
}

fn float_cmp(a: f64, b: f64, tol: f64) -> Ordering {
    if (a - b).abs() <= tol {
        Ordering::Equal
    } else if a < b {
        Ordering::Less
    } else {
        Ordering::Greater
    }
}

impl fmt::Display for IndexValue {
    /// Exact values print as an integer or as `p/2`; floating values with
    /// 12 significant digits.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IndexValue::Exact { doubled } => {
                if doubled.bit(0) {
                    write!(f, "{doubled}/2")
                } else {
                    write!(f, "{}", doubled >> 1u32)
                }
            }
            IndexValue::Float { value } => f.write_str(&significant_digits(*value, 12)),
        }
    }
}

impl Serialize for IndexValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn significant_digits(v: f64, digits: i32) -> String {
    if v == 0.0 || !v.is_finite() {
        return format!("{v}");
    }
    let magnitude = v.abs().log10().floor() as i32;
    let decimals = (digits - 1 - magnitude).max(0) as usize;
    let s = format!("{v:.decimals$}");
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

fn big_pow(base: usize, exp: u32) -> BigUint {
    if base == 0 {
        return <BigUint as Zero>::zero();
    }
    num_traits::pow(BigUint::from(base), exp as usize)
}

fn float_pow(base: usize, exp: f64) -> f64 {
    if base == 0 {
        0.0
    } else {
        (base as f64).powf(exp)
    }
}

/// `R(D)` as the literal arc sum.
pub fn index_digraph(d: &Digraph, a: &Exponent) -> IndexValue {
    match a.as_exact() {
        Some(k) => {
            let mut cache: HashMap<usize, BigUint> = HashMap::new();
            let mut pw = |x: usize| cache.entry(x).or_insert_with(|| big_pow(x, k)).clone();
            let doubled = d
                .arcs()
                .iter()
                .map(|&(u, v)| pw(d.out_degree(u)) + pw(d.in_degree(v)))
                .sum();
            IndexValue::Exact { doubled }
        }
        None => {
            let sum: f64 = d
                .arcs()
                .iter()
                .map(|&(u, v)| float_pow(d.out_degree(u), a.value()) + float_pow(d.in_degree(v), a.value()))
                .sum();
            IndexValue::Float { value: sum / 2.0 }
        }
    }
}

/// `R(G)` as the vertex sum of `d(u)^(a+1)`.
pub fn index_graph(g: &Graph, a: &Exponent) -> IndexValue {
    match a.as_exact() {
        Some(k) => {
            let sum: BigUint = (0..g.n()).map(|u| big_pow(g.degree(u), k + 1)).sum();
            IndexValue::Exact { doubled: sum << 1u32 }
        }
        None => IndexValue::Float {
            value: (0..g.n()).map(|u| float_pow(g.degree(u), a.value() + 1.0)).sum(),
        },
    }
}

/// `R(G)` as the edge sum of `d(u)^a + d(v)^a`; equals [`index_graph`].
pub fn index_graph_by_edges(g: &Graph, a: &Exponent) -> IndexValue {
    match a.as_exact() {
        Some(k) => {
            let sum: BigUint = g
                .edges()
                .iter()
                .map(|&(u, v)| big_pow(g.degree(u), k) + big_pow(g.degree(v), k))
                .sum();
            IndexValue::Exact { doubled: sum << 1u32 }
        }
        None => IndexValue::Float {
            value: g
                .edges()
                .iter()
                .map(|&(u, v)| float_pow(g.degree(u), a.value()) + float_pow(g.degree(v), a.value()))
                .sum(),
        },
    }
}

type PhiFn<'a> = dyn Fn(usize, usize) -> Option<f64> + Send + Sync + 'a;

/// A vertex-degree-based pair function `phi(out(u), in(v))`.
pub struct VdbFunction<'a> {
    phi: Box<PhiFn<'a>>,
}

impl<'a> VdbFunction<'a> {
    /// A partial function; `None` marks an undefined degree pair.
    pub fn partial(phi: impl Fn(usize, usize) -> Option<f64> + Send + Sync + 'a) -> Self {
        VdbFunction { phi: Box::new(phi) }
    }

    pub fn total(phi: impl Fn(usize, usize) -> f64 + Send + Sync + 'a) -> Self {
        VdbFunction::partial(move |i, j| Some(phi(i, j)))
    }

    pub fn from_table(table: HashMap<(usize, usize), f64>) -> Self {
        VdbFunction::partial(move |i, j| table.get(&(i, j)).copied())
    }

    /// `phi(i, j) = i^a + j^a` with `0^a = 0`.
    pub fn zeroth_order_randic(a: f64) -> Self {
        VdbFunction::total(move |i, j| float_pow(i, a) + float_pow(j, a))
    }

    pub fn eval(&self, i: usize, j: usize) -> Option<f64> {
        (self.phi)(i, j)
    }
}

/// `1/2 * sum over arcs (u, v) of phi(out(u), in(v))`.
pub fn vdb_index(d: &Digraph, phi: &VdbFunction<'_>) -> Result<f64> {
    let mut sum = 0.0;
    for &(u, v) in d.arcs() {
        let (i, j) = (d.out_degree(u), d.in_degree(v));
        sum += phi.eval(i, j).ok_or(Error::PhiUndefined(i, j))?;
    }
    Ok(sum / 2.0)
}

/// Evaluates `sum of coeff * base^(a + shift)` (with `0^x = 0` for `x > 0`
/// and `x^0 = 1`), interpreted as a doubled index value. Exact mode fails
/// if the sum is negative.
pub fn doubled_closed_form(terms: &[(i64, u64, i32)], a: &Exponent) -> IndexValue {
    match a.as_exact() {
        Some(k) => {
            let mut sum = BigInt::zero();
            for &(coeff, base, shift) in terms {
                let exp = i64::from(k) + i64::from(shift);
                assert!(exp >= 0, "negative exponent in closed form");
                let p = if exp == 0 {
                    BigUint::from(1u32)
                } else {
                    big_pow(base as usize, exp as u32)
                };
                sum += BigInt::from(coeff) * BigInt::from(p);
            }
            assert!(!sum.is_negative(), "closed form evaluated to a negative value");
            IndexValue::Exact {
                doubled: sum.magnitude().clone(),
            }
        }
        None => {
            let value: f64 = terms
                .iter()
                .map(|&(coeff, base, shift)| {
                    let exp = a.value() + f64::from(shift);
                    let p = if exp == 0.0 { 1.0 } else { float_pow(base as usize, exp) };
                    coeff as f64 * p
                })
                .sum();
            IndexValue::Float { value: value / 2.0 }
        }
    }
}

pub fn check_feasible(n: usize, r: usize) -> Result<()> {
    if n < 2 || 2 * r + 1 > n {
        return Err(Error::Infeasible { n, r });
    }
    Ok(())
}

/// Closed-form maximum over orientations of cacti with `n` vertices and
/// `r` cycles: `1/2 [(n-1)^(a+1) + n - 1 + 2r * 2^a]`.
pub fn theorem_bound(n: usize, r: usize, a: &Exponent) -> Result<IndexValue> {
    check_feasible(n, r)?;
    let (n1, r) = ((n - 1) as u64, r as i64);
    Ok(doubled_closed_form(
        &[(1, n1, 1), (n1 as i64, 1, 0), (2 * r, 2, 0)],
        a,
    ))
}

/// Numeric backends for the hot loops: `u128` when every sum provably
/// fits, big integers otherwise, `f64` for real exponents. All sums are
/// doubled index values.
pub(crate) trait Weight: Clone + Send + Sync + fmt::Debug + 'static {
    /// Whether running sums may be updated incrementally without drift.
    const EXACT: bool;

    fn zero() -> Self;
    fn small(x: u64) -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn cmp_w(&self, rhs: &Self) -> Ordering;
    /// Strict comparison without tolerance.
    fn raw_gt(&self, rhs: &Self) -> bool;
    fn to_index(&self) -> IndexValue;
}

impl Weight for u128 {
    const EXACT: bool = true;

    fn zero() -> Self {
        0
    }
    fn small(x: u64) -> Self {
        u128::from(x)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn cmp_w(&self, rhs: &Self) -> Ordering {
        self.cmp(rhs)
    }
    fn raw_gt(&self, rhs: &Self) -> bool {
        self > rhs
    }
    fn to_index(&self) -> IndexValue {
        IndexValue::from_doubled(*self)
    }
}

impl Weight for BigUint {
    const EXACT: bool = true;

    fn zero() -> Self {
        <BigUint as Zero>::zero()
    }
    fn small(x: u64) -> Self {
        BigUint::from(x)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn cmp_w(&self, rhs: &Self) -> Ordering {
        self.cmp(rhs)
    }
    fn raw_gt(&self, rhs: &Self) -> bool {
        self > rhs
    }
    fn to_index(&self) -> IndexValue {
        IndexValue::from_doubled(self.clone())
    }
}

impl Weight for f64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        0.0
    }
    fn small(x: u64) -> Self {
        x as f64
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn cmp_w(&self, rhs: &Self) -> Ordering {
        // Doubled values: a tolerance of 2e-9 here is 1e-9 on the index.
        float_cmp(*self, *rhs, 2.0 * FLOAT_TOLERANCE)
    }
    fn raw_gt(&self, rhs: &Self) -> bool {
        self > rhs
    }
    fn to_index(&self) -> IndexValue {
        IndexValue::Float { value: self / 2.0 }
    }
}

/// `x^a` (per-arc terms) and `x^(a+1)` (per-vertex terms) for degrees
/// `0..=max`.
#[derive(Clone, Debug)]
pub(crate) struct PowerTable<W> {
    pub arc: Vec<W>,
    pub vertex: Vec<W>,
}

impl<W: Weight> PowerTable<W> {
    /// Doubled index of a digraph given its degree sequences:
    /// `sum over u of out(u)^(a+1) + in(u)^(a+1)`.
    pub fn vertex_sum(&self, out: &[usize], inn: &[usize]) -> W {
        out.iter()
            .chain(inn)
            .fold(W::zero(), |acc, &x| acc.add(&self.vertex[x]))
    }
}

pub(crate) enum Tables {
    Small(PowerTable<u128>),
    Big(PowerTable<BigUint>),
    Float(PowerTable<f64>),
}

/// Picks the cheapest backend that is exact for `a` when every value is a
/// sum of at most `terms` table entries with degrees at most `max_degree`.
pub(crate) fn tables(a: &Exponent, max_degree: usize, terms: usize) -> Tables {
    let max = max_degree.max(3);
    match a.as_exact() {
        None => {
            let arc = (0..=max).map(|x| float_pow(x, a.value())).collect();
            let vertex = (0..=max).map(|x| float_pow(x, a.value() + 1.0)).collect();
            Tables::Float(PowerTable { arc, vertex })
        }
        Some(k) => {
            let fits = (max as u128)
                .checked_pow(k + 1)
                .and_then(|top| top.checked_mul(terms as u128 + 16))
                .is_some();
            if fits {
                let arc = (0..=max).map(|x| (x as u128).pow(k)).collect();
                let vertex = (0..=max).map(|x| (x as u128).pow(k + 1)).collect();
                Tables::Small(PowerTable { arc, vertex })
            } else {
                let arc = (0..=max).map(|x| big_pow(x, k)).collect();
                let vertex = (0..=max).map(|x| big_pow(x, k + 1)).collect();
                Tables::Big(PowerTable { arc, vertex })
            }
        }
    }
}

macro_rules! with_tables {
    ($tables:expr, $t:ident => $body:expr) => {
        match $tables {
            $crate::index::Tables::Small($t) => $body,
            $crate::index::Tables::Big($t) => $body,
            $crate::index::Tables::Float($t) => $body,
        }
    };
}
pub(crate) use with_tables;
