//! Cross-validation sweeps.
//!
//! Every check here pits at least two independent routes to the same value
//! against each other: closed formulas vs the spiral simulator, the two m(n)
//! paths, substitution words vs floor-definition words vs continued-fraction
//! recursion, closed continued fractions vs the generic algorithm, and the
//! exhaustive search vs everything else. The CLI `verify` subcommand and the
//! acceptance test target both run these functions.

use num::bigint::BigInt;
use num::ToPrimitive;

use crate::context::TessContext;
use crate::error::Result;
use crate::exhaustive::{self, SearchConfig};
use crate::perimeter;
use crate::spiral::SpiralAnimal;
use crate::words;

/// The hyperbolic signatures exercised by default.
pub const REPRESENTATIVE_SIGNATURES: [(u32, u32); 10] = [
    (3, 7),
    (3, 8),
    (4, 5),
    (4, 6),
    (5, 4),
    (5, 5),
    (6, 4),
    (7, 3),
    (8, 3),
    (9, 3),
];

pub const EUCLIDEAN_SIGNATURES: [(u32, u32); 3] = [(3, 6), (4, 4), (6, 3)];

pub const EXHAUSTIVE_SIGNATURES: [(u32, u32); 4] = [(3, 7), (4, 5), (5, 4), (7, 3)];

/// Caps for one verification run.
#[derive(Clone, Debug)]
pub struct Scope {
    pub signatures: Vec<(u32, u32)>,
    /// Sweep tile counts up to min(n_5, n_cap) per signature.
    pub n_cap: u64,
    /// Word-equivalence prefix length.
    pub word_len: usize,
    /// Continued-fraction quotients compared.
    pub cf_terms: usize,
    /// Word-length identities checked for k <= len_k_max.
    pub len_k_max: u32,
    /// Layer-sum identities checked for k <= sum_k_max.
    pub sum_k_max: u32,
    /// Euclidean sweep bound.
    pub euclid_cap: u64,
    /// Exhaustive certification size.
    pub exhaustive_n: u32,
    /// Constant-bound checks cover all hyperbolic p,q up to this value.
    pub const_pq_max: u32,
}

impl Default for Scope {
    fn default() -> Self {
        Scope {
            signatures: REPRESENTATIVE_SIGNATURES.to_vec(),
            n_cap: 20_000,
            word_len: 10_000,
            cf_terms: 40,
            len_k_max: 10,
            sum_k_max: 8,
            euclid_cap: 1_000,
            exhaustive_n: 7,
            const_pq_max: 12,
        }
    }
}

impl Scope {
    /// Reduced caps for a fast smoke run.
    pub fn quick() -> Self {
        Scope {
            signatures: REPRESENTATIVE_SIGNATURES.to_vec(),
            n_cap: 250,
            word_len: 1_200,
            cf_terms: 25,
            len_k_max: 6,
            sum_k_max: 5,
            euclid_cap: 150,
            exhaustive_n: 5,
            const_pq_max: 12,
        }
    }
}

#[derive(Clone, Debug)]
pub struct CriterionReport {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl CriterionReport {
    fn pass(name: &'static str, detail: String) -> Self {
        CriterionReport {
            name,
            passed: true,
            detail,
        }
    }

    fn fail(name: &'static str, detail: String) -> Self {
        CriterionReport {
            name,
            passed: false,
            detail,
        }
    }
}

fn sweep_cap(ctx: &TessContext, n_cap: u64) -> Result<u64> {
    let n5 = ctx.sequences(5)?.tiles;
    Ok(n5.to_u64().map_or(n_cap, |v| v.min(n_cap)))
}

/// Criterion 1: closed formula == spiral simulator, every n up to the cap.
pub fn formula_vs_simulator(scope: &Scope) -> Result<CriterionReport> {
    const NAME: &str = "formula-simulator agreement";
    let mut total = 0u64;
    for &(p, q) in &scope.signatures {
        let ctx = TessContext::new(p, q)?;
        let cap = sweep_cap(&ctx, scope.n_cap)?;
        let mut animal = SpiralAnimal::new(&ctx)?;
        for n in 1..=cap {
            animal.grow_to(n)?;
            let formula = perimeter::pmin(&ctx, &BigInt::from(n))?;
            if BigInt::from(animal.perimeter()) != formula {
                return Ok(CriterionReport::fail(
                    NAME,
                    format!(
                        "({p},{q}) n={n}: simulator {} vs formula {formula}",
                        animal.perimeter()
                    ),
                ));
            }
            if !animal.check_incidence() {
                return Ok(CriterionReport::fail(
                    NAME,
                    format!("({p},{q}) n={n}: edge-incidence conservation broken"),
                ));
            }
        }
        total += cap;
    }
    Ok(CriterionReport::pass(
        NAME,
        format!(
            "{} signatures, {total} tile counts, exact equality",
            scope.signatures.len()
        ),
    ))
}

/// Criterion 2: pmin == (p-2)(n-n_k) + P_k - 2m for both m paths.
pub fn triple_path_identity(scope: &Scope) -> Result<CriterionReport> {
    const NAME: &str = "triple-path identity";
    let mut total = 0u64;
    for &(p, q) in &scope.signatures {
        let ctx = TessContext::new(p, q)?;
        let cap = sweep_cap(&ctx, scope.n_cap)?;
        let start = (p * (q - 2) + 1) as u64;
        for n in start..=cap {
            let n_big = BigInt::from(n);
            let breakdown = perimeter::m_closed(&ctx, &n_big)?;
            let m_direct = perimeter::m_oracle(&ctx, &n_big)?;
            if breakdown.m != m_direct {
                return Ok(CriterionReport::fail(
                    NAME,
                    format!(
                        "({p},{q}) n={n}: m closed {} vs oracle {m_direct}",
                        breakdown.m
                    ),
                ));
            }
            let stats = ctx.sequences(breakdown.k)?;
            let via_layers = BigInt::from(p - 2) * (&n_big - &stats.tiles) + &stats.perimeter
                - BigInt::from(2) * &breakdown.m;
            let pmin = perimeter::pmin(&ctx, &n_big)?;
            if via_layers != pmin || breakdown.p_min != pmin {
                return Ok(CriterionReport::fail(
                    NAME,
                    format!("({p},{q}) n={n}: layer path {via_layers} vs pmin {pmin}"),
                ));
            }
            total += 1;
        }
    }
    Ok(CriterionReport::pass(
        NAME,
        format!("{total} evaluations, both m paths exact"),
    ))
}

/// Criterion 3: epsilon window, refined window beyond n_4, constant bounds.
pub fn bound_theorems(scope: &Scope) -> Result<CriterionReport> {
    const NAME: &str = "bound theorems";
    let mut checked = 0u64;
    for &(p, q) in &scope.signatures {
        let ctx = TessContext::new(p, q)?;
        let cap = sweep_cap(&ctx, scope.n_cap)?;
        let report = perimeter::bounds_report(&ctx, &BigInt::from(cap))?;
        if !report.passed {
            return Ok(CriterionReport::fail(
                NAME,
                format!("({p},{q}): {}", report.first_failure.unwrap_or_default()),
            ));
        }
        checked += report.checked;
    }
    // constant bounds for every hyperbolic signature up to the cap
    let mut consts = 0u32;
    for p in 3..=scope.const_pq_max {
        for q in 3..=scope.const_pq_max {
            if (p - 2) * (q - 2) <= 4 {
                continue;
            }
            let ctx = TessContext::new(p, q)?;
            // a bounds_report over the first window re-checks the constants
            let n_max = BigInt::from(p * (q - 2) + 1);
            let report = perimeter::bounds_report(&ctx, &n_max)?;
            if !report.passed {
                return Ok(CriterionReport::fail(
                    NAME,
                    format!("constants ({p},{q}): {}", report.first_failure.unwrap_or_default()),
                ));
            }
            consts += 1;
        }
    }
    Ok(CriterionReport::pass(
        NAME,
        format!("epsilon exact on {checked} values; constants on {consts} signatures"),
    ))
}

/// Criterion 4: the four word engines agree symbol by symbol.
pub fn word_engine_equivalence(scope: &Scope) -> Result<CriterionReport> {
    const NAME: &str = "word-engine equivalence";
    for &(p, q) in &scope.signatures {
        let ctx = TessContext::new(p, q)?;
        let n = scope.word_len;

        // substitution-generated limit vs closed floor formula
        let w_rec = words::w_limit_prefix(&ctx, n)?;
        for (i, &sym) in w_rec.symbols().iter().enumerate() {
            let closed = words::w_closed(&ctx, (i + 1) as u64)?;
            if sym != closed {
                return Ok(CriterionReport::fail(
                    NAME,
                    format!("({p},{q}) W({}) = {sym} vs closed {closed}", i + 1),
                ));
            }
        }

        // affine twin vs Sturmian word: what(i) = B(i-1) for i >= 2
        let sturmian = words::sturmian_prefix(&ctx, n)?;
        let offset = if p == 3 { 4u8 } else { 3u8 };
        for i in 2..=n {
            let hat = offset - w_rec.symbols()[i - 1];
            let b = sturmian.symbols()[i - 2];
            if hat != b {
                return Ok(CriterionReport::fail(
                    NAME,
                    format!("({p},{q}) twin mismatch at i={i}"),
                ));
            }
        }

        // Shallit recursion vs floor definition
        let cf = words::continued_fraction_closed(&ctx)?;
        let shallit = words::shallit_prefix(&cf, n)?;
        if shallit.symbols() != sturmian.symbols() {
            let at = shallit
                .symbols()
                .iter()
                .zip(sturmian.symbols())
                .position(|(a, b)| a != b);
            return Ok(CriterionReport::fail(
                NAME,
                format!("({p},{q}) Shallit vs Sturmian prefix differ at {at:?}"),
            ));
        }
    }

    // closed continued fractions vs the generic algorithm, all families
    let mut cf_checked = 0u32;
    for p in 3..=scope.const_pq_max {
        for q in 3..=scope.const_pq_max {
            if (p - 2) * (q - 2) <= 4 {
                continue;
            }
            let ctx = TessContext::new(p, q)?;
            let closed = words::continued_fraction_closed(&ctx)?.unroll(scope.cf_terms);
            let generic =
                words::continued_fraction_generic(ctx.beta().unwrap(), scope.cf_terms)?;
            if closed != generic {
                return Ok(CriterionReport::fail(
                    NAME,
                    format!("({p},{q}) closed CF {closed:?} vs generic {generic:?}"),
                ));
            }
            cf_checked += 1;
        }
    }
    Ok(CriterionReport::pass(
        NAME,
        format!(
            "{} signatures x {} symbols; CF quotients on {cf_checked} signatures",
            scope.signatures.len(),
            scope.word_len
        ),
    ))
}

/// Criterion 5: word lengths and one-block gap sums in closed form.
pub fn length_and_sum_identities(scope: &Scope) -> Result<CriterionReport> {
    const NAME: &str = "length and sum identities";
    for &(p, q) in &scope.signatures {
        let mut ctx = TessContext::new(p, q)?;
        // U_10 of the fastest-growing signatures exceeds the default budget
        ctx.set_symbol_budget(ctx.symbol_budget().max(100_000_000));
        for k in 1..=scope.len_k_max {
            let (u_len, w_len) = words::word_lengths(&ctx, k)?;
            let (u, w) = words::uw_words(&ctx, k)?;
            if BigInt::from(u.len() as u64) != u_len || BigInt::from(w.len() as u64) != w_len {
                return Ok(CriterionReport::fail(
                    NAME,
                    format!(
                        "({p},{q}) k={k}: |U|={} |W|={} vs closed {u_len}, {w_len}",
                        u.len(),
                        w.len()
                    ),
                ));
            }
        }
        let k_from = if p == 3 { 2 } else { 1 };
        for k in k_from..=scope.sum_k_max {
            let d = words::substitute_degree_word(&ctx, k)?;
            let (block, expect) = if p > 3 {
                (
                    (ctx.gamma(k) + ctx.gamma(k - 1)).to_usize().unwrap(),
                    ctx.sequences(k)?.growth,
                )
            } else {
                (
                    ctx.gamma(k).to_usize().unwrap(),
                    ctx.gamma(k + 1) + ctx.gamma(k),
                )
            };
            let sum: u64 = d.symbols()[..block]
                .iter()
                .map(|&s| (q - s as u32) as u64)
                .sum();
            if BigInt::from(sum) != expect {
                return Ok(CriterionReport::fail(
                    NAME,
                    format!("({p},{q}) k={k}: block sum {sum} vs {expect}"),
                ));
            }
        }
    }
    Ok(CriterionReport::pass(
        NAME,
        format!(
            "lengths to k={}, block sums to k={}",
            scope.len_k_max, scope.sum_k_max
        ),
    ))
}

/// Criterion 6: Euclidean spirals reproduce the classical formulas.
pub fn euclidean_reproduction(scope: &Scope) -> Result<CriterionReport> {
    const NAME: &str = "euclidean reproduction";
    for &(p, q) in &EUCLIDEAN_SIGNATURES {
        let ctx = TessContext::new(p, q)?;
        let mut animal = SpiralAnimal::new(&ctx)?;
        for n in 1..=scope.euclid_cap {
            animal.grow_to(n)?;
            let formula = perimeter::pmin(&ctx, &BigInt::from(n))?;
            if BigInt::from(animal.perimeter()) != formula {
                return Ok(CriterionReport::fail(
                    NAME,
                    format!(
                        "({p},{q}) n={n}: simulator {} vs formula {formula}",
                        animal.perimeter()
                    ),
                ));
            }
        }
    }
    Ok(CriterionReport::pass(
        NAME,
        format!("3 euclidean signatures to n={}", scope.euclid_cap),
    ))
}

/// Criterion 7: exhaustive minima certify the formulas at tiny n.
pub fn exhaustive_certification(scope: &Scope) -> Result<CriterionReport> {
    const NAME: &str = "exhaustive certification";
    let cfg = SearchConfig {
        n_max: scope.exhaustive_n,
        ..SearchConfig::default()
    };
    for &(p, q) in &EXHAUSTIVE_SIGNATURES {
        let ctx = TessContext::new(p, q)?;
        let minima = exhaustive::min_perimeters_up_to(&ctx, scope.exhaustive_n, &cfg)?;
        for (i, entry) in minima.iter().enumerate() {
            let n = (i + 1) as u64;
            let formula = perimeter::pmin(&ctx, &BigInt::from(n))?;
            if BigInt::from(entry.min_perimeter) != formula {
                return Ok(CriterionReport::fail(
                    NAME,
                    format!(
                        "({p},{q}) n={n}: exhaustive {} vs formula {formula}",
                        entry.min_perimeter
                    ),
                ));
            }
            if entry.extremal_count == 0 {
                return Ok(CriterionReport::fail(
                    NAME,
                    format!("({p},{q}) n={n}: no minimizer counted"),
                ));
            }
        }
    }
    Ok(CriterionReport::pass(
        NAME,
        format!(
            "4 signatures, all n <= {}, search minima exact",
            scope.exhaustive_n
        ),
    ))
}

/// Criterion 8: frozen spot values.
pub fn spot_values() -> Result<CriterionReport> {
    const NAME: &str = "spot values";
    let cases: [(u32, u32, u64, u64); 4] =
        [(4, 5, 13, 20), (4, 5, 14, 22), (7, 3, 8, 28), (3, 7, 16, 12)];
    for (p, q, n, expect) in cases {
        let ctx = TessContext::new(p, q)?;
        let formula = perimeter::pmin(&ctx, &BigInt::from(n))?;
        let mut animal = SpiralAnimal::new(&ctx)?;
        animal.grow_to(n)?;
        if formula != BigInt::from(expect) || animal.perimeter() != expect {
            return Ok(CriterionReport::fail(
                NAME,
                format!(
                    "({p},{q}) n={n}: expected {expect}, formula {formula}, simulator {}",
                    animal.perimeter()
                ),
            ));
        }
    }
    Ok(CriterionReport::pass(NAME, "4 frozen goldens".to_string()))
}

/// Run every criterion and collect the reports.
pub fn run_all(scope: &Scope) -> Result<Vec<CriterionReport>> {
    Ok(vec![
        formula_vs_simulator(scope)?,
        triple_path_identity(scope)?,
        bound_theorems(scope)?,
        word_engine_equivalence(scope)?,
        length_and_sum_identities(scope)?,
        euclidean_reproduction(scope)?,
        exhaustive_certification(scope)?,
        spot_values()?,
    ])
}
