//! Closed formulas for the minimal perimeter.
//!
//! Euclidean signatures use the three classical square-root formulas with
//! exact integer ceilings. Hyperbolic signatures split at n = p(q-2): below,
//! a piecewise formula read off the spiral construction; above, the layer
//! decomposition P_min = (p-2)(n - n_k) + P_k - 2 m(n) where m(n) counts
//! saturated boundary vertices and has a closed form through exact floors in
//! the quadratic field.
//!
//! The error term `epsilon` with P_min = (p-2 - 2/beta) n + epsilon is never
//! used to compute perimeters; it is evaluated separately (the irrational
//! parts cancel against the linear term) so that the linear form stays a
//! testable identity rather than a computation path.

use num::bigint::BigInt;
use num::integer::Integer;
use num::rational::BigRational;
use num::{One, Signed, Zero};

use crate::context::{TessClass, TessContext};
use crate::error::{Error, Result};
use crate::quad::QuadExt;
use crate::words;

/// Full decomposition of one minimal-perimeter evaluation for n > p(q-2).
#[derive(Clone, Debug)]
pub struct PerimeterBreakdown {
    pub n: BigInt,
    /// Layer index with n_k < n <= n_{k+1}.
    pub k: u32,
    /// Block index floor((n - n_k - 1)/l_k), between 0 and p-1.
    pub j: BigInt,
    /// Position within the block, 1 <= n' <= l_k.
    pub n_prime: BigInt,
    /// Case-selected offset phi_k.
    pub phi: QuadExt,
    /// Saturation count m(n).
    pub m: BigInt,
    /// Exact error term of the linear form.
    pub epsilon: QuadExt,
    pub p_min: BigInt,
}

/// Outcome of the bound sweep: all exact comparisons, with the first
/// counterexample when one exists.
#[derive(Clone, Debug)]
pub struct BoundsReport {
    pub passed: bool,
    pub first_failure: Option<String>,
    pub checked: u64,
}

/// Smallest integer m with m^2 >= x (x >= 0).
fn ceil_sqrt(x: &BigInt) -> BigInt {
    debug_assert!(!x.is_negative());
    let r = x.sqrt();
    if &(&r * &r) == x {
        r
    } else {
        r + BigInt::one()
    }
}

fn euclidean_pmin(p: u32, q: u32, n: &BigInt) -> BigInt {
    let two = BigInt::from(2);
    match (p, q) {
        // 2 ceil(2 sqrt(n))
        (4, 4) => &two * ceil_sqrt(&(BigInt::from(4) * n)),
        // 2 ceil(sqrt(12n - 3))
        (6, 3) => &two * ceil_sqrt(&(BigInt::from(12) * n - BigInt::from(3))),
        // 2 ceil((n + sqrt(6n))/2) - n, with ceil(x) = min { m : 2m >= n + ceil_sqrt(6n) }
        (3, 6) => {
            let r = ceil_sqrt(&(BigInt::from(6) * n));
            let m = (n + r + BigInt::one()).div_floor(&two);
            &two * m - n
        }
        _ => unreachable!("no other euclidean signatures exist"),
    }
}

/// The spiral-increment formula for 1 <= n <= p(q-2).
///
/// Each new tile increases the perimeter by p-2, except that every vertex
/// closure costs p-4 instead; closures happen at n = q, q+(q-2), ... which
/// floor((n-2)/(q-2)) counts.
fn small_n_pmin(p: u32, q: u32, n: &BigInt) -> BigInt {
    let p_big = BigInt::from(p);
    if n < &BigInt::from(q) {
        return &p_big + BigInt::from(p - 2) * (n - BigInt::one());
    }
    let j = (n - BigInt::from(2)).div_floor(&BigInt::from(q - 2));
    &p_big + BigInt::from(p - 2) * (n - BigInt::one() - &j) + BigInt::from(p as i64 - 4) * &j
}

fn check_layer_range(ctx: &TessContext, n: &BigInt) -> Result<()> {
    let threshold = BigInt::from(ctx.p()) * BigInt::from(ctx.q() - 2);
    if n <= &threshold {
        return Err(Error::domain(format!(
            "layer decomposition requires n > p(q-2) = {threshold}, got {n}"
        )));
    }
    Ok(())
}

/// Closed-form m(n) together with every intermediate quantity.
pub fn m_closed(ctx: &TessContext, n: &BigInt) -> Result<PerimeterBreakdown> {
    let (alpha, beta) = ctx.require_hyperbolic()?;
    check_layer_range(ctx, n)?;
    let p = ctx.p();
    let k = ctx.layer_index(n)?;
    let stats = ctx.sequences(k)?;
    let next = ctx.sequences(k + 1)?;
    let excess = n - &stats.tiles; // n - n_k, >= 1
    let j = (&excess - BigInt::one()).div_floor(&stats.growth);
    let n_prime = &excess - &j * &stats.growth;
    debug_assert!(j >= BigInt::zero() && j < BigInt::from(p));
    debug_assert!(n_prime >= BigInt::one() && n_prime <= stats.growth);

    let one = ctx.field_int(1).unwrap();
    let alpha_mk = alpha.int_pow(-(k as i64))?;
    let phi = if p == 3 {
        // boundary (l_k + l_{k+1})/(q-2) = gamma_{k+1} + gamma_k
        let boundary = ctx.gamma(k + 1) + &stats.gamma;
        if n_prime <= boundary {
            &alpha_mk * &(alpha - &one)
        } else {
            // alpha (alpha - 1) + 1 = alpha^2 - alpha + 1
            &alpha_mk * &(&(&alpha.int_pow(2)? - alpha) + &one)
        }
    } else if p == 4 {
        &alpha_mk * &(alpha - &one)
    } else {
        &alpha_mk * &(alpha - beta)
    };

    // closing-layer correction floor((n - n_k)/(n_{k+1} - n_k)): 0 or 1
    let closing = excess.div_floor(&(&next.tiles - &stats.tiles));

    let excess_f = ctx.field_int(excess.clone()).unwrap();
    let j_f = ctx.field_int(j.clone()).unwrap();
    let inner = (&(&excess_f - &phi) / beta) - (&j_f * &alpha_mk);
    let m = inner.floor() + &closing;

    let p_min =
        BigInt::from(p - 2) * &excess + &stats.perimeter - BigInt::from(2) * &m;

    // epsilon = 2n/beta + 2 ceil(1 + 1/beta + p/(alpha-1) + p alpha^-k/(alpha^-1 - 1)
    //                            + phi_k/beta + j alpha^-k - n/beta) - 2*closing
    let n_f = ctx.field_int(n.clone()).unwrap();
    let p_f = ctx.field_int(p).unwrap();
    let alpha_inv = alpha.int_pow(-1)?;
    let arg = &one
        + &(&one / beta)
        + &(&p_f / &(alpha - &one))
        + &(&(&p_f * &alpha_mk) / &(&alpha_inv - &one))
        + &(&phi / beta)
        + &(&j_f * &alpha_mk)
        - &(&n_f / beta);
    let two = BigInt::from(2);
    let eps_const = &two * arg.ceil() - &two * &closing;
    let epsilon = (ctx.field_int(&two * n).unwrap() / beta)
        + ctx.field_int(eps_const).unwrap();

    Ok(PerimeterBreakdown {
        n: n.clone(),
        k,
        j,
        n_prime,
        phi,
        m,
        epsilon,
        p_min,
    })
}

/// m(n) by direct inversion of the cumulative gap sums over the materialized
/// word d_k, plus 1 exactly when n closes the layer.
pub fn m_oracle(ctx: &TessContext, n: &BigInt) -> Result<BigInt> {
    ctx.require_hyperbolic()?;
    check_layer_range(ctx, n)?;
    let k = ctx.layer_index(n)?;
    let stats = ctx.sequences(k)?;
    let next = ctx.sequences(k + 1)?;
    let cums = words::degree_gap_cumsums(ctx, k)?;
    let target = n - &stats.tiles - BigInt::one();
    debug_assert!(target >= BigInt::zero() && BigInt::from(*cums.last().unwrap()) > target);
    let target: u64 = num::ToPrimitive::to_u64(&target)
        .expect("in-range target fits u64 once the word is materialized");
    let m = cums.partition_point(|&c| c <= target);
    let closing = if n == &next.tiles { 1u32 } else { 0 };
    Ok(BigInt::from(m as u64) + BigInt::from(closing))
}

/// Exact error term of the linear form, as an element of the field.
pub fn epsilon(ctx: &TessContext, n: &BigInt) -> Result<QuadExt> {
    Ok(m_closed(ctx, n)?.epsilon)
}

/// Exact minimal perimeter for any class and any n >= 1.
pub fn pmin(ctx: &TessContext, n: &BigInt) -> Result<BigInt> {
    if n < &BigInt::one() {
        return Err(Error::domain(format!("tile count must be >= 1, got {n}")));
    }
    match ctx.class() {
        TessClass::Spherical => Err(Error::UnsupportedClass {
            p: ctx.p(),
            q: ctx.q(),
            class: ctx.class().as_str(),
        }),
        TessClass::Euclidean => Ok(euclidean_pmin(ctx.p(), ctx.q(), n)),
        TessClass::Hyperbolic => {
            let threshold = BigInt::from(ctx.p()) * BigInt::from(ctx.q() - 2);
            if n <= &threshold {
                Ok(small_n_pmin(ctx.p(), ctx.q(), n))
            } else {
                Ok(m_closed(ctx, n)?.p_min)
            }
        }
    }
}

fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// The five constant bounds plus the epsilon window checks up to n_max.
pub fn bounds_report(ctx: &TessContext, n_max: &BigInt) -> Result<BoundsReport> {
    let (alpha, beta) = ctx.require_hyperbolic()?;
    check_layer_range(ctx, n_max)?;
    let p = ctx.p();
    let one = ctx.field_int(1).unwrap();
    let p_f = ctx.field_int(p).unwrap();
    let mut failures: Vec<String> = Vec::new();
    let mut checked = 0u64;

    // constant bounds: 1/alpha < 0.4, 1/beta < 1.4, p/(alpha-1) < 4.4,
    // phi_2/beta < 2.8, p/alpha^2 < 1.1
    let mut check_const = |name: &str, value: QuadExt, bound: BigRational| {
        let b = ctx.field_ratio(bound).unwrap();
        if (&b - &value).sign() != 1 {
            failures.push(format!("{name} not below bound: {}", value.to_decimal(12)));
        }
    };
    check_const("1/alpha", alpha.inverse()?, ratio(2, 5));
    check_const("1/beta", beta.inverse()?, ratio(7, 5));
    check_const(
        "p/(alpha-1)",
        (&p_f / &(alpha - &one)).clone(),
        ratio(22, 5),
    );
    let alpha_m2 = alpha.int_pow(-2)?;
    let phi2_variants: Vec<QuadExt> = if p == 3 {
        vec![
            &alpha_m2 * &(alpha - &one),
            &alpha_m2 * &(&(&alpha.int_pow(2)? - alpha) + &one),
        ]
    } else if p == 4 {
        vec![&alpha_m2 * &(alpha - &one)]
    } else {
        vec![&alpha_m2 * &(alpha - beta)]
    };
    for phi2 in phi2_variants {
        check_const("phi_2/beta", &phi2 / beta, ratio(14, 5));
    }
    check_const("p/alpha^2", &p_f * &alpha_m2, ratio(11, 10));

    // epsilon in (0, 22) over the sweep; refined window beyond n_4
    let twenty_two = ctx.field_int(22).unwrap();
    let center = {
        let inner = &one + &(&one / beta) + &(&p_f / &(alpha - &one));
        &ctx.field_int(2).unwrap() * &inner
    };
    let width = ctx.field_ratio(ratio(13, 5)).unwrap();
    let n4 = ctx.sequences(4)?.tiles;
    let mut n = BigInt::from(p) * BigInt::from(ctx.q() - 2) + BigInt::one();
    while &n <= n_max {
        let eps = m_closed(ctx, &n)?.epsilon;
        checked += 1;
        if eps.sign() != 1 {
            failures.push(format!("epsilon <= 0 at n={n}"));
            break;
        }
        if (&twenty_two - &eps).sign() != 1 {
            failures.push(format!("epsilon >= 22 at n={n}"));
            break;
        }
        if n > n4 {
            let dev = &eps - &center;
            let dev_abs = if dev.sign() < 0 { -dev } else { dev };
            if (&width - &dev_abs).sign() != 1 {
                failures.push(format!("refined epsilon window violated at n={n}"));
                break;
            }
        }
        n += 1;
    }

    Ok(BoundsReport {
        passed: failures.is_empty(),
        first_failure: failures.into_iter().next(),
        checked,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn ctx(p: u32, q: u32) -> TessContext {
        TessContext::new(p, q).unwrap()
    }

    #[test]
    fn small_n_examples() {
        let c = ctx(4, 5);
        assert_eq!(pmin(&c, &big(1)).unwrap(), big(4));
        assert_eq!(pmin(&c, &big(3)).unwrap(), big(8));
        assert_eq!(pmin(&c, &big(12)).unwrap(), big(20));
    }

    #[test]
    fn euclidean_examples() {
        assert_eq!(pmin(&ctx(4, 4), &big(5)).unwrap(), big(10));
        assert_eq!(pmin(&ctx(6, 3), &big(1)).unwrap(), big(6));
        assert_eq!(pmin(&ctx(3, 6), &big(1)).unwrap(), big(3));
        // perfect-square case: {3,6} with n = 6 is the hexagon, perimeter 6
        assert_eq!(pmin(&ctx(3, 6), &big(6)).unwrap(), big(6));
        assert_eq!(pmin(&ctx(4, 4), &big(9)).unwrap(), big(12));
    }

    #[test]
    fn spherical_rejected() {
        assert!(pmin(&ctx(3, 4), &big(3)).is_err());
    }

    #[test]
    fn layer_path_examples() {
        let c = ctx(4, 5);
        assert_eq!(pmin(&c, &big(13)).unwrap(), big(20));
        assert_eq!(pmin(&c, &big(14)).unwrap(), big(22));
        assert_eq!(pmin(&c, &big(16)).unwrap(), big(24));
        let b = m_closed(&c, &big(14)).unwrap();
        assert_eq!(b.m, big(0));
        assert_eq!(b.k, 2);

        // closing the third layer: m = p (gamma_2 + gamma_1) = 20, P = P_3 = 76
        let b = m_closed(&c, &big(61)).unwrap();
        assert_eq!(b.m, big(20));
        assert_eq!(b.p_min, big(76));
        assert_eq!(b.p_min, c.sequences(3).unwrap().perimeter);

        let c = ctx(3, 7);
        assert_eq!(m_closed(&c, &big(17)).unwrap().m, big(0));
        assert_eq!(pmin(&c, &big(16)).unwrap(), big(12));
    }

    #[test]
    fn m_oracle_examples() {
        let c = ctx(4, 5);
        assert_eq!(m_oracle(&c, &big(14)).unwrap(), big(0));
        assert_eq!(m_oracle(&c, &big(16)).unwrap(), big(1));
        // first tile of a fresh layer has an empty gap sum (q > 3)
        assert_eq!(m_oracle(&c, &big(62)).unwrap(), big(0));
        let c = ctx(3, 7);
        assert_eq!(m_oracle(&c, &big(62)).unwrap(), big(0));
        // q = 3: d_k starts with a zero gap, so the first tile forces m = 1
        let c = ctx(7, 3);
        assert_eq!(m_oracle(&c, &big(9)).unwrap(), big(1));
        assert_eq!(m_closed(&c, &big(9)).unwrap().m, big(1));
        assert_eq!(pmin(&c, &big(9)).unwrap(), big(31));
    }

    #[test]
    fn closed_and_oracle_m_agree_locally() {
        for (p, q) in [(3, 7), (4, 5), (5, 4), (7, 3), (5, 5)] {
            let c = ctx(p, q);
            let start = p * (q - 2) + 1;
            for n in start..start + 80 {
                let n = big(n as i64);
                let closed = m_closed(&c, &n).unwrap().m;
                let oracle = m_oracle(&c, &n).unwrap();
                assert_eq!(closed, oracle, "({p},{q}) n={n}");
            }
        }
    }

    #[test]
    fn epsilon_examples() {
        let c = ctx(4, 5);
        // epsilon(14) = 22 - (2 - 2/beta) * 14, roughly 5.83, inside (0, 22)
        let eps = epsilon(&c, &big(14)).unwrap();
        let approx = eps.to_f64();
        assert!((approx - 5.8348).abs() < 1e-3, "epsilon(14) ~ {approx}");
        assert_eq!(eps.sign(), 1);

        // identity: pmin(n) = (p-2-2/beta) n + epsilon(n) exactly in the field
        let beta = c.beta().unwrap();
        for n in [13u32, 14, 20, 61, 100, 913] {
            let n_big = big(n as i64);
            let eps = epsilon(&c, &n_big).unwrap();
            let n_f = c.field_int(n_big.clone()).unwrap();
            let lin = (&c.field_int(2).unwrap()
                - &(&c.field_int(2).unwrap() / beta))
                * n_f;
            let total = &lin + &eps;
            assert_eq!(
                total,
                c.field_int(pmin(&c, &n_big).unwrap()).unwrap(),
                "n={n}"
            );
        }

        // closing-layer value matches the layer identity
        let eps61 = epsilon(&c, &big(61)).unwrap();
        let alpha = c.alpha().unwrap();
        let one = c.field_int(1).unwrap();
        let p_f = c.field_int(4).unwrap();
        let expect = &c.field_int(2).unwrap()
            * &(&(&p_f / &(alpha - &one))
                + &(&(&p_f * &alpha.int_pow(-3).unwrap()) / &(&alpha.int_pow(-1).unwrap() - &one))
                + &(&one + &beta.inverse().unwrap()));
        assert_eq!(eps61, expect);
    }

    #[test]
    fn bounds_examples() {
        let c = ctx(3, 7);
        let n_max = c.sequences(5).unwrap().tiles;
        let report = bounds_report(&c, &n_max).unwrap();
        assert!(report.passed, "{:?}", report.first_failure);

        let c = ctx(7, 3);
        let n_max = c.sequences(5).unwrap().tiles;
        let report = bounds_report(&c, &n_max).unwrap();
        assert!(report.passed, "{:?}", report.first_failure);
    }

    #[test]
    fn increments_are_admissible() {
        // pmin(n+1) - pmin(n) is p-2 or p-4 for q >= 4. For q = 3 a tile
        // attached across a degree-3 boundary vertex saturates two vertices
        // at once (the zero gaps in d_k), adding p-6 to the admissible set.
        for (p, q) in [(3, 7), (4, 5), (5, 4), (7, 3)] {
            let c = ctx(p, q);
            let mut prev = pmin(&c, &big(1)).unwrap();
            let mut admissible = vec![BigInt::from(p as i64 - 2), BigInt::from(p as i64 - 4)];
            if q == 3 {
                admissible.push(BigInt::from(p as i64 - 6));
            }
            for n in 2..300i64 {
                let cur = pmin(&c, &big(n)).unwrap();
                let diff = &cur - &prev;
                assert!(
                    admissible.contains(&diff),
                    "({p},{q}) n={n}: diff {diff}"
                );
                prev = cur;
            }
        }
    }

    #[test]
    fn regime_boundary_is_continuous() {
        for (p, q) in [(3, 7), (3, 8), (4, 5), (5, 4), (5, 5), (7, 3), (9, 3)] {
            let c = ctx(p, q);
            let boundary = big((p * (q - 2)) as i64);
            let below = pmin(&c, &boundary).unwrap();
            let above = pmin(&c, &(&boundary + BigInt::one())).unwrap();
            let diff = &above - &below;
            let ok = [p as i64 - 2, p as i64 - 4, p as i64 - 6]
                .map(BigInt::from)
                .contains(&diff);
            assert!(ok, "({p},{q}): {below} -> {above}");
        }
    }

    #[test]
    fn huge_n_is_fine() {
        // closed formulas scale far beyond anything a simulator could touch
        let c = ctx(4, 5);
        let n: BigInt = BigInt::from(10u32).pow(30);
        let val = pmin(&c, &n).unwrap();
        assert!(val > BigInt::zero());
        let b = m_closed(&c, &n).unwrap();
        assert_eq!(b.p_min, val);
        // the word oracle would need alpha^k symbols; the budget guard stops it
        assert!(matches!(m_oracle(&c, &n), Err(Error::Budget { .. })));
    }
}
