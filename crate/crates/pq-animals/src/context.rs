//! Per-signature constants and the integer layer sequences.
//!
//! A [`TessContext`] bundles a tessellation signature (p,q) with everything
//! derived from it: the class (spherical / Euclidean / hyperbolic), the growth
//! constant `alpha`, the slope `beta`, and memoized tables of the integer
//! sequences gamma_k, n_k, l_k, P_k describing complete layers grown around a
//! single tile. The tables are append-only and extended on demand behind a
//! mutex, so a context can be shared freely across threads.

use std::sync::Mutex;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};

use crate::error::{Error, Result};
use crate::quad::QuadExt;
use crate::words::WordTables;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TessClass {
    Spherical,
    Euclidean,
    Hyperbolic,
}

impl TessClass {
    pub fn as_str(self) -> &'static str {
        match self {
            TessClass::Spherical => "spherical",
            TessClass::Euclidean => "euclidean",
            TessClass::Hyperbolic => "hyperbolic",
        }
    }
}

impl std::fmt::Display for TessClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Exact layer data for one index k: gamma_k, the tile count n_k of the
/// complete k-layered animal, the band size l_k = (q-2) gamma_k, and the
/// perimeter P_k = p (gamma_k + gamma_{k-1}).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LayerStats {
    pub gamma: BigInt,
    pub tiles: BigInt,
    pub growth: BigInt,
    pub perimeter: BigInt,
}

#[derive(Default)]
struct SeqTables {
    /// gamma[i] = gamma_i, starting at gamma_0 = 0, gamma_1 = 1.
    gamma: Vec<BigInt>,
    /// tiles[k] = n_k for k >= 1; index 0 is a placeholder.
    tiles: Vec<BigInt>,
}

pub struct TessContext {
    p: u32,
    q: u32,
    class: TessClass,
    t: BigInt,
    disc: Option<BigInt>,
    alpha: Option<QuadExt>,
    beta: Option<QuadExt>,
    symbol_budget: u64,
    seq: Mutex<SeqTables>,
    pub(crate) words: Mutex<WordTables>,
}

impl std::fmt::Debug for TessContext {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("TessContext")
            .field("p", &self.p)
            .field("q", &self.q)
            .field("class", &self.class)
            .finish()
    }
}

/// Default symbol budget for materialized words, overridable via HYPER_BUDGET.
pub fn default_symbol_budget() -> u64 {
    std::env::var("HYPER_BUDGET")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(10_000_000)
}

impl TessContext {
    pub fn new(p: u32, q: u32) -> Result<Self> {
        if p < 3 || q < 3 {
            return Err(Error::InvalidSignature { p, q });
        }
        let prod = BigInt::from(p - 2) * BigInt::from(q - 2);
        let four = BigInt::from(4);
        let class = match prod.cmp(&four) {
            std::cmp::Ordering::Less => TessClass::Spherical,
            std::cmp::Ordering::Equal => TessClass::Euclidean,
            std::cmp::Ordering::Greater => TessClass::Hyperbolic,
        };
        let t = &prod - BigInt::from(2);
        let (disc, alpha, beta) = if class == TessClass::Hyperbolic {
            let d = &t * &t - &four;
            // alpha = (t + sqrt(d)) / 2, the root > 1 of x^2 - t x + 1
            let alpha = QuadExt::new(
                BigRational::new(t.clone(), BigInt::from(2)),
                BigRational::new(BigInt::one(), BigInt::from(2)),
                d.clone(),
            )?;
            // beta = ((p-2)(q-2) + sqrt(d)) / (2(p-2)) = (alpha + 1)/(p - 2)
            let two_p2 = BigInt::from(2) * BigInt::from(p - 2);
            let beta = QuadExt::new(
                BigRational::new(prod.clone(), two_p2.clone()),
                BigRational::new(BigInt::one(), two_p2),
                d.clone(),
            )?;
            debug_assert_eq!(alpha.sign(), 1);
            (Some(d), Some(alpha), Some(beta))
        } else {
            (None, None, None)
        };
        Ok(TessContext {
            p,
            q,
            class,
            t,
            disc,
            alpha,
            beta,
            symbol_budget: default_symbol_budget(),
            seq: Mutex::new(SeqTables {
                gamma: vec![BigInt::zero(), BigInt::one()],
                tiles: vec![BigInt::zero(), BigInt::one()],
            }),
            words: Mutex::new(WordTables::default()),
        })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn class(&self) -> TessClass {
        self.class
    }

    pub fn is_hyperbolic(&self) -> bool {
        self.class == TessClass::Hyperbolic
    }

    /// t = (p-2)(q-2) - 2, the trace of the growth recurrence.
    pub fn t(&self) -> &BigInt {
        &self.t
    }

    /// Discriminant (p-2)^2 (q-2)^2 - 4 (p-2)(q-2) = t^2 - 4 (hyperbolic only).
    pub fn discriminant(&self) -> Option<&BigInt> {
        self.disc.as_ref()
    }

    pub fn alpha(&self) -> Option<&QuadExt> {
        self.alpha.as_ref()
    }

    pub fn beta(&self) -> Option<&QuadExt> {
        self.beta.as_ref()
    }

    pub fn symbol_budget(&self) -> u64 {
        self.symbol_budget
    }

    pub fn set_symbol_budget(&mut self, budget: u64) {
        self.symbol_budget = budget;
    }

    pub(crate) fn require_hyperbolic(&self) -> Result<(&QuadExt, &QuadExt)> {
        match (&self.alpha, &self.beta) {
            (Some(a), Some(b)) => Ok((a, b)),
            _ => Err(Error::UnsupportedClass {
                p: self.p,
                q: self.q,
                class: self.class.as_str(),
            }),
        }
    }

    /// An integer as an element of this context's quadratic field.
    pub fn field_int(&self, n: impl Into<BigInt>) -> Option<QuadExt> {
        self.disc.as_ref().map(|d| {
            QuadExt::raw(
                BigRational::from_integer(n.into()),
                BigRational::zero(),
                d.clone(),
            )
        })
    }

    /// A rational as an element of this context's quadratic field.
    pub fn field_ratio(&self, r: BigRational) -> Option<QuadExt> {
        self.disc
            .as_ref()
            .map(|d| QuadExt::raw(r, BigRational::zero(), d.clone()))
    }

    /// gamma_k from the three-term recurrence gamma_{k+1} = t gamma_k - gamma_{k-1}.
    pub fn gamma(&self, k: u32) -> BigInt {
        let mut tables = self.seq.lock().unwrap();
        self.ensure_gamma(&mut tables, k as usize);
        tables.gamma[k as usize].clone()
    }

    fn ensure_gamma(&self, tables: &mut SeqTables, upto: usize) {
        while tables.gamma.len() <= upto {
            let len = tables.gamma.len();
            let next = &self.t * &tables.gamma[len - 1] - &tables.gamma[len - 2];
            tables.gamma.push(next);
        }
    }

    fn ensure_tiles(&self, tables: &mut SeqTables, upto: usize) {
        self.ensure_gamma(tables, upto.max(1));
        let band = BigInt::from(self.p) * BigInt::from(self.q - 2);
        while tables.tiles.len() <= upto {
            let k = tables.tiles.len() - 1; // n_{k+1} = n_k + p (q-2) gamma_k
            let next = &tables.tiles[k] + &band * &tables.gamma[k];
            tables.tiles.push(next);
        }
    }

    /// Exact (gamma_k, n_k, l_k, P_k) for k >= 1 on a hyperbolic context.
    pub fn sequences(&self, k: u32) -> Result<LayerStats> {
        self.require_hyperbolic()?;
        if k == 0 {
            return Err(Error::domain("layer index k must be at least 1"));
        }
        let mut tables = self.seq.lock().unwrap();
        let k = k as usize;
        self.ensure_tiles(&mut tables, k);
        let gamma = tables.gamma[k].clone();
        let prev = tables.gamma[k - 1].clone();
        let tiles = tables.tiles[k].clone();
        let growth = BigInt::from(self.q - 2) * &gamma;
        let perimeter = BigInt::from(self.p) * (&gamma + &prev);
        Ok(LayerStats {
            gamma,
            tiles,
            growth,
            perimeter,
        })
    }

    /// The unique k >= 1 with n_k < n <= n_{k+1}, found by iterating the
    /// integer recurrence (n_k grows geometrically, so this is O(log n)).
    pub fn layer_index(&self, n: &BigInt) -> Result<u32> {
        self.require_hyperbolic()?;
        if n < &BigInt::from(2) {
            return Err(Error::domain(format!(
                "layer index defined for n >= 2, got {n}"
            )));
        }
        let mut tables = self.seq.lock().unwrap();
        let mut k = 1usize;
        loop {
            self.ensure_tiles(&mut tables, k + 1);
            if &tables.tiles[k + 1] >= n {
                debug_assert!(&tables.tiles[k] < n);
                return Ok(k as u32);
            }
            k += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn classes() {
        assert_eq!(TessContext::new(4, 4).unwrap().class(), TessClass::Euclidean);
        assert_eq!(TessContext::new(3, 6).unwrap().class(), TessClass::Euclidean);
        assert_eq!(TessContext::new(6, 3).unwrap().class(), TessClass::Euclidean);
        assert_eq!(TessContext::new(3, 5).unwrap().class(), TessClass::Spherical);
        assert_eq!(TessContext::new(3, 7).unwrap().class(), TessClass::Hyperbolic);
        assert!(TessContext::new(2, 7).is_err());
        assert!(TessContext::new(7, 2).is_err());
    }

    #[test]
    fn beta_of_3_7() {
        // (p-2)(q-2) = 5, so beta = (5 + sqrt(5))/2 in the d = 5 field.
        let ctx = TessContext::new(3, 7).unwrap();
        let beta = ctx.beta().unwrap();
        assert_eq!(ctx.discriminant().unwrap(), &big(5));
        assert_eq!(
            beta,
            &QuadExt::new(
                BigRational::new(big(5), big(2)),
                BigRational::new(big(1), big(2)),
                big(5),
            )
            .unwrap()
        );
    }

    #[test]
    fn alpha_of_7_3() {
        // t = 3, alpha = (3 + sqrt(5))/2
        let ctx = TessContext::new(7, 3).unwrap();
        assert_eq!(ctx.t(), &big(3));
        let alpha = ctx.alpha().unwrap();
        assert_eq!(
            alpha,
            &QuadExt::new(
                BigRational::new(big(3), big(2)),
                BigRational::new(big(1), big(2)),
                big(5),
            )
            .unwrap()
        );
        // beta = (alpha + 1)/(p-2)
        let beta_check = (alpha + &ctx.field_int(1).unwrap())
            .checked_div(&ctx.field_int(5).unwrap())
            .unwrap();
        assert_eq!(&beta_check, ctx.beta().unwrap());
    }

    #[test]
    fn sequences_examples() {
        let ctx = TessContext::new(4, 5).unwrap();
        let s1 = ctx.sequences(1).unwrap();
        assert_eq!(
            (s1.gamma, s1.tiles, s1.growth, s1.perimeter),
            (big(1), big(1), big(3), big(4))
        );
        let s2 = ctx.sequences(2).unwrap();
        assert_eq!(
            (s2.gamma, s2.tiles, s2.growth, s2.perimeter),
            (big(4), big(13), big(12), big(20))
        );

        let ctx = TessContext::new(3, 7).unwrap();
        let s3 = ctx.sequences(3).unwrap();
        assert_eq!(
            (s3.gamma, s3.tiles, s3.growth, s3.perimeter),
            (big(8), big(61), big(40), big(33))
        );

        assert!(ctx.sequences(0).is_err());
        assert!(TessContext::new(4, 4).unwrap().sequences(2).is_err());
    }

    #[test]
    fn layer_index_brackets() {
        let ctx = TessContext::new(4, 5).unwrap();
        assert_eq!(ctx.layer_index(&big(13)).unwrap(), 1);
        assert_eq!(ctx.layer_index(&big(14)).unwrap(), 2);
        assert_eq!(ctx.layer_index(&big(2)).unwrap(), 1);
        assert!(ctx.layer_index(&big(1)).is_err());

        let ctx = TessContext::new(3, 7).unwrap();
        assert_eq!(ctx.layer_index(&big(61)).unwrap(), 2);
        assert_eq!(ctx.layer_index(&big(62)).unwrap(), 3);
    }

    #[test]
    fn gamma_closed_form_matches_recurrence() {
        // gamma_k = (alpha^k - alpha^-k)/(alpha - alpha^-1) exactly, k <= 12
        for (p, q) in [(3, 7), (4, 5), (5, 4), (7, 3), (5, 5), (12, 12)] {
            let ctx = TessContext::new(p, q).unwrap();
            let alpha = ctx.alpha().unwrap();
            let denom = alpha - &alpha.int_pow(-1).unwrap();
            for k in 0..=12u32 {
                let num = alpha.int_pow(k as i64).unwrap() - alpha.int_pow(-(k as i64)).unwrap();
                let closed = num.checked_div(&denom).unwrap();
                assert_eq!(closed, ctx.field_int(ctx.gamma(k)).unwrap(), "({p},{q}) k={k}");
            }
        }
    }

    #[test]
    fn n_k_closed_form_matches_recurrence() {
        // n_k = 1 + p(q-2)/(alpha - alpha^-1) * ((alpha^k-1)/(alpha-1) - (alpha^-k-1)/(alpha^-1-1))
        for (p, q) in [(3, 7), (4, 5), (5, 4), (7, 3), (6, 4), (12, 12)] {
            let ctx = TessContext::new(p, q).unwrap();
            let alpha = ctx.alpha().unwrap();
            let one = ctx.field_int(1).unwrap();
            let ainv = alpha.int_pow(-1).unwrap();
            let scale = ctx
                .field_int(BigInt::from(p) * BigInt::from(q - 2))
                .unwrap()
                .checked_div(&(alpha - &ainv))
                .unwrap();
            for k in 1..=12u32 {
                let ak = alpha.int_pow(k as i64).unwrap();
                let amk = alpha.int_pow(-(k as i64)).unwrap();
                let term1 = (&ak - &one).checked_div(&(alpha - &one)).unwrap();
                let term2 = (&amk - &one).checked_div(&(&ainv - &one)).unwrap();
                let closed = &one + &(&scale * &(&term1 - &term2));
                let stats = ctx.sequences(k).unwrap();
                assert_eq!(closed, ctx.field_int(stats.tiles).unwrap(), "({p},{q}) k={k}");
            }
        }
    }

    #[test]
    fn growth_is_tile_difference_over_p() {
        for (p, q) in [(3, 7), (4, 5), (7, 3), (5, 5)] {
            let ctx = TessContext::new(p, q).unwrap();
            for k in 1..=10u32 {
                let a = ctx.sequences(k).unwrap();
                let b = ctx.sequences(k + 1).unwrap();
                assert_eq!(&b.tiles - &a.tiles, BigInt::from(p) * &a.growth);
            }
        }
    }

    /// The closed form k = floor(log_alpha Y) with
    /// Y = (Delta + sqrt(Delta^2 - 4 alpha))/2 and
    /// Delta = alpha + 1 + (n-2)(alpha-1)(alpha-alpha^-1)/(p(q-2)).
    ///
    /// Y is the larger root of f(x) = x^2 - Delta x + alpha, so the floor of
    /// its alpha-logarithm is decidable with exact field comparisons:
    /// t <= Y iff f(t) <= 0 or (f(t) > 0 and 2t < Delta).
    fn closed_form_layer_index(ctx: &TessContext, n: &BigInt) -> u32 {
        let alpha = ctx.alpha().unwrap();
        let one = ctx.field_int(1).unwrap();
        let ainv = alpha.int_pow(-1).unwrap();
        let scale = BigInt::from(ctx.p()) * BigInt::from(ctx.q() - 2);
        let delta = alpha
            + &one
            + &(ctx.field_int(n - BigInt::from(2)).unwrap()
                * (alpha - &one)
                * (alpha - &ainv)
                .checked_div(&ctx.field_int(scale).unwrap())
                .unwrap());
        let le_y = |t: &QuadExt| {
            let f = &(t * t) - &(&delta * t) + alpha;
            f.sign() <= 0
                || (ctx.field_int(2).unwrap() * t).cmp_field(&delta).unwrap()
                    == std::cmp::Ordering::Less
        };
        let mut k = 0u32;
        loop {
            let next_pow = alpha.int_pow((k + 1) as i64).unwrap();
            if !le_y(&next_pow) {
                return k;
            }
            k += 1;
            assert!(k < 64, "runaway exponent");
        }
    }

    #[test]
    fn layer_index_matches_log_formula() {
        for (p, q) in [(3, 7), (4, 5), (5, 4), (7, 3), (5, 5), (12, 12)] {
            let ctx = TessContext::new(p, q).unwrap();
            for k in 1..=12u32 {
                let lo = ctx.sequences(k).unwrap().tiles;
                let hi = ctx.sequences(k + 1).unwrap().tiles;
                let mid = (&lo + &hi) / BigInt::from(2);
                for n in [&lo + BigInt::one(), mid, hi.clone()] {
                    assert_eq!(
                        ctx.layer_index(&n).unwrap(),
                        closed_form_layer_index(&ctx, &n),
                        "({p},{q}) n={n}"
                    );
                }
            }
        }
    }
}
