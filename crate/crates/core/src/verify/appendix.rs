//! Positivity of two derivative expressions in the exponent, by grid
//! sampling plus a lower bound on every grid segment.

use super::{check_cap, Builder, Grid, NumericCheck, VerificationReport};
use crate::error::{Error, Result};

pub const APPENDIX_MIN_GRID: usize = 1000;

/// Terms `c * b^(a+1) * ln b`, each increasing in `a`.
type Terms = &'static [(f64, f64)];

struct Expression {
    name: &'static str,
    text: &'static str,
    interval: (f64, f64),
    positive: Terms,
    negative: Terms,
}

const F1: Expression = Expression {
    name: "f1",
    text: "3^(a+1) ln 3 - 3 * 2^(a+1) ln 2",
    interval: (1.0, 2.0),
    positive: &[(1.0, 3.0)],
    negative: &[(3.0, 2.0)],
};

const F2: Expression = Expression {
    name: "f2",
    text: "5^(a+1) ln 5 - 2 * 4^(a+1) ln 4 + 3^(a+1) ln 3 - 2^(a+1) ln 2",
    interval: (1.0, 3.0),
    positive: &[(1.0, 5.0), (1.0, 3.0)],
    negative: &[(2.0, 4.0), (1.0, 2.0)],
};

fn sum(terms: Terms, a: f64) -> f64 {
    terms.iter().map(|&(c, b)| c * b.powf(a + 1.0) * b.ln()).sum()
}

impl Expression {
    fn eval(&self, a: f64) -> f64 {
        sum(self.positive, a) - sum(self.negative, a)
    }

    fn check(&self, points: usize) -> NumericCheck {
        let (lo, hi) = self.interval;
        let at = |i: usize| lo + (hi - lo) * i as f64 / (points - 1) as f64;
        let (mut grid_min, mut grid_argmin) = (f64::INFINITY, lo);
        for i in 0..points {
            let v = self.eval(at(i));
            if v < grid_min {
                grid_min = v;
                grid_argmin = at(i);
            }
        }
        // On [x, y] every term is increasing, so f >= pos(x) - neg(y).
        let interval_lower_bound = (1..points)
            .map(|i| sum(self.positive, at(i - 1)) - sum(self.negative, at(i)))
            .fold(f64::INFINITY, f64::min);
        NumericCheck {
            name: self.name.into(),
            expression: self.text.into(),
            interval: self.interval,
            grid_points: points,
            grid_min,
            grid_argmin,
            interval_lower_bound,
            positive: grid_min > 0.0 && interval_lower_bound > 0.0,
        }
    }
}

pub fn f1(a: f64) -> f64 {
    F1.eval(a)
}

pub fn f2(a: f64) -> f64 {
    F2.eval(a)
}

pub fn verify_appendix_positivity(grid_points: usize) -> Result<VerificationReport> {
    if grid_points < APPENDIX_MIN_GRID {
        return Err(Error::GridTooCoarse {
            points: grid_points,
            min: APPENDIX_MIN_GRID,
        });
    }
    check_cap("grid_points", grid_points, 100_000_000)?;
    let mut b = Builder::new(
        "appendix",
        Grid {
            grid_points: Some(grid_points),
            ..Grid::default()
        },
    );
    for e in [F1, F2] {
        let check = e.check(grid_points);
        let mut o = super::Outcome {
            instances: grid_points as u64,
            ..Default::default()
        };
        if !check.positive {
            o.violate(
                e.name,
                format!(
                    "grid minimum {} at a = {}, segment lower bound {}",
                    check.grid_min, check.grid_argmin, check.interval_lower_bound
                ),
            );
        }
        b.absorb(o);
        b.numeric(check);
    }
    Ok(b.finish())
}
