//! Boundary word machinery.
//!
//! The boundary degrees of complete layers form words d_k generated by a
//! substitution system. The same words arise by splicing two recursive word
//! families U_k, W_k, and the limit of the W_k is (after an affine relabeling)
//! the Sturmian word of the slope beta — computable both from exact floors and
//! from the continued fraction of beta via the B_k recursion. This module
//! implements all four generators plus the continued-fraction tooling needed
//! to cross-check them against each other.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num::bigint::BigInt;
use num::{One, ToPrimitive, Zero};

use crate::context::TessContext;
use crate::error::{Error, Result};
use crate::quad::QuadExt;

/// A finite word of small symbols: vertex degrees (2..=4) or binary digits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeWord {
    symbols: Vec<u8>,
    p: u32,
    q: u32,
}

impl DegreeWord {
    pub(crate) fn new(symbols: Vec<u8>, p: u32, q: u32) -> Self {
        DegreeWord { symbols, p, q }
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// Signature tags of the generating context; (0,0) for generic words.
    pub fn signature(&self) -> (u32, u32) {
        (self.p, self.q)
    }

    /// True if `other` is a cyclic rotation of `self`.
    pub fn equals_up_to_rotation(&self, other: &DegreeWord) -> bool {
        if self.symbols.len() != other.symbols.len() {
            return false;
        }
        if self.symbols.is_empty() {
            return true;
        }
        let doubled: Vec<u8> = self
            .symbols
            .iter()
            .chain(self.symbols.iter())
            .copied()
            .collect();
        doubled
            .windows(other.symbols.len())
            .any(|w| w == other.symbols.as_slice())
    }
}

impl fmt::Display for DegreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.symbols {
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// Periodic continued fraction `[b0; preperiod, (period)]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContinuedFraction {
    pub b0: u64,
    pub preperiod: Vec<u64>,
    pub period: Vec<u64>,
}

impl ContinuedFraction {
    /// Partial quotients b1, b2, ... as an infinite iterator.
    pub fn quotients(&self) -> impl Iterator<Item = u64> + '_ {
        self.preperiod
            .iter()
            .copied()
            .chain(self.period.iter().copied().cycle())
    }

    /// The first `terms` quotients including b0.
    pub fn unroll(&self, terms: usize) -> Vec<BigInt> {
        std::iter::once(self.b0)
            .chain(self.quotients())
            .take(terms)
            .map(BigInt::from)
            .collect()
    }
}

impl fmt::Display for ContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{};", self.b0)?;
        for (i, b) in self.preperiod.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{b}")?;
        }
        if !self.preperiod.is_empty() {
            write!(f, ",")?;
        }
        write!(f, "(")?;
        for (i, b) in self.period.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{b}")?;
        }
        write!(f, ")]")
    }
}

#[derive(Default)]
pub(crate) struct WordTables {
    d: BTreeMap<u32, Arc<DegreeWord>>,
    u: BTreeMap<u32, Arc<DegreeWord>>,
    w: BTreeMap<u32, Arc<DegreeWord>>,
    u_hat: BTreeMap<u32, Arc<DegreeWord>>,
    w_hat: BTreeMap<u32, Arc<DegreeWord>>,
    /// Cumulative sums of (q - d_k(i)) for the cached d_k.
    cums: BTreeMap<u32, Arc<Vec<u64>>>,
}

fn check_budget(ctx: &TessContext, needed: &BigInt) -> Result<()> {
    let budget = ctx.symbol_budget();
    if needed > &BigInt::from(budget) {
        return Err(Error::Budget {
            needed: needed.to_u64().unwrap_or(u64::MAX),
            budget,
        });
    }
    Ok(())
}

fn check_pre(ctx: &TessContext, k: u32) -> Result<()> {
    ctx.require_hyperbolic()?;
    if k == 0 {
        return Err(Error::domain("word index k must be at least 1"));
    }
    Ok(())
}

/// The boundary degree word d_k, generated by k-1 substitution rounds from
/// d_1 = 2^p.
///
/// For q = 3 the rules act on digrams: scanning left to right, a '3' consumes
/// the '2' that always follows it and the pair rewrites to `3 2^(p-5)`, while
/// a lone '2' rewrites to `3 2^(p-4)`.
pub fn substitute_degree_word(ctx: &TessContext, k: u32) -> Result<Arc<DegreeWord>> {
    check_pre(ctx, k)?;
    check_budget(ctx, &ctx.sequences(k)?.perimeter)?;
    if let Some(w) = ctx.words.lock().unwrap().d.get(&k) {
        return Ok(w.clone());
    }
    let (p, q) = (ctx.p(), ctx.q());
    let mut cur = ctx
        .words
        .lock()
        .unwrap()
        .d
        .get(&1)
        .cloned()
        .unwrap_or_else(|| Arc::new(DegreeWord::new(vec![2u8; p as usize], p, q)));
    ctx.words.lock().unwrap().d.entry(1).or_insert_with(|| cur.clone());
    let run = |out: &mut Vec<u8>, sym: u8, count: u32| {
        out.extend(std::iter::repeat_n(sym, count as usize));
    };
    for level in 2..=k {
        let prev = cur.symbols();
        let mut next = Vec::with_capacity(prev.len() * 4);
        if p == 3 {
            // c -> 4 3^(q-2-c) for c in {2,3,4}
            for &c in prev {
                next.push(4);
                run(&mut next, 3, q - 2 - c as u32);
            }
        } else if q == 3 {
            let mut i = 0;
            while i < prev.len() {
                if prev[i] == 3 {
                    debug_assert_eq!(prev.get(i + 1), Some(&2));
                    next.push(3);
                    run(&mut next, 2, p - 5);
                    i += 2;
                } else {
                    next.push(3);
                    run(&mut next, 2, p - 4);
                    i += 1;
                }
            }
        } else {
            // c -> 3 2^(p-4) (3 2^(p-3))^(q-1-c) for c in {2,3}
            for &c in prev {
                next.push(3);
                run(&mut next, 2, p - 4);
                for _ in 0..(q - 1 - c as u32) {
                    next.push(3);
                    run(&mut next, 2, p - 3);
                }
            }
        }
        cur = Arc::new(DegreeWord::new(next, p, q));
        ctx.words
            .lock()
            .unwrap()
            .d
            .entry(level)
            .or_insert_with(|| cur.clone());
    }
    Ok(cur)
}

/// One step of the U/W recurrence shared by the degree alphabet and its
/// binary twin.
fn uw_step(p: u32, q: u32, u: &[u8], w: &[u8]) -> (Vec<u8>, Vec<u8>) {
    let rep = |out: &mut Vec<u8>, word: &[u8], times: u32| {
        for _ in 0..times {
            out.extend_from_slice(word);
        }
    };
    let mut nu = Vec::new();
    let mut nw = Vec::new();
    if p == 3 {
        nu.extend_from_slice(w);
        rep(&mut nu, u, q - 5);
        nw.extend_from_slice(w);
        rep(&mut nw, u, q - 6);
    } else if q == 3 {
        nu.extend_from_slice(w);
        rep(&mut nu, u, p - 5);
        nw.extend_from_slice(w);
        rep(&mut nw, u, p - 6);
    } else {
        nu.extend_from_slice(w);
        rep(&mut nu, u, p - 4);
        for _ in 0..(q - 3) {
            nu.extend_from_slice(w);
            rep(&mut nu, u, p - 3);
        }
        nw.extend_from_slice(w);
        rep(&mut nw, u, p - 4);
        for _ in 0..(q - 4) {
            nw.extend_from_slice(w);
            rep(&mut nw, u, p - 3);
        }
    }
    (nu, nw)
}

fn uw_words_inner(
    ctx: &TessContext,
    k: u32,
    binary: bool,
) -> Result<(Arc<DegreeWord>, Arc<DegreeWord>)> {
    check_pre(ctx, k)?;
    let (u_len, w_len) = word_lengths(ctx, k)?;
    check_budget(ctx, &u_len)?;
    check_budget(ctx, &w_len.max(BigInt::zero()))?;
    {
        let tables = ctx.words.lock().unwrap();
        let (us, ws) = if binary {
            (&tables.u_hat, &tables.w_hat)
        } else {
            (&tables.u, &tables.w)
        };
        if let (Some(u), Some(w)) = (us.get(&k), ws.get(&k)) {
            return Ok((u.clone(), w.clone()));
        }
    }
    let (p, q) = (ctx.p(), ctx.q());
    let (mut u, mut w) = if binary {
        match (p, q) {
            (3, _) => (vec![1u8], vec![0u8]),
            (_, 3) => (vec![1u8], vec![0u8, 1]),
            _ => (vec![1u8], vec![0u8]),
        }
    } else {
        match (p, q) {
            (3, _) => (vec![3u8], vec![4u8]),
            (_, 3) => (vec![2u8], vec![3u8, 2]),
            _ => (vec![2u8], vec![3u8]),
        }
    };
    let mut level = 1u32;
    // resume from the deepest cached level below k
    {
        let tables = ctx.words.lock().unwrap();
        let (us, ws) = if binary {
            (&tables.u_hat, &tables.w_hat)
        } else {
            (&tables.u, &tables.w)
        };
        if let Some((&lvl, uw)) = us.range(..=k).next_back() {
            if let Some(ww) = ws.get(&lvl) {
                level = lvl;
                u = uw.symbols().to_vec();
                w = ww.symbols().to_vec();
            }
        }
    }
    while level < k {
        let (nu, nw) = uw_step(p, q, &u, &w);
        u = nu;
        w = nw;
        level += 1;
        let mut guard = ctx.words.lock().unwrap();
        let tables = &mut *guard;
        let (us, ws) = if binary {
            (&mut tables.u_hat, &mut tables.w_hat)
        } else {
            (&mut tables.u, &mut tables.w)
        };
        us.entry(level)
            .or_insert_with(|| Arc::new(DegreeWord::new(u.clone(), p, q)));
        ws.entry(level)
            .or_insert_with(|| Arc::new(DegreeWord::new(w.clone(), p, q)));
    }
    let mut guard = ctx.words.lock().unwrap();
    let tables = &mut *guard;
    let (us, ws) = if binary {
        (&mut tables.u_hat, &mut tables.w_hat)
    } else {
        (&mut tables.u, &mut tables.w)
    };
    let ua = us
        .entry(k)
        .or_insert_with(|| Arc::new(DegreeWord::new(u.clone(), p, q)))
        .clone();
    let wa = ws
        .entry(k)
        .or_insert_with(|| Arc::new(DegreeWord::new(w.clone(), p, q)))
        .clone();
    Ok((ua, wa))
}

/// The word pair (U_k, W_k) over the degree alphabet.
pub fn uw_words(ctx: &TessContext, k: u32) -> Result<(Arc<DegreeWord>, Arc<DegreeWord>)> {
    uw_words_inner(ctx, k, false)
}

/// The 0/1-initialized twins of (U_k, W_k), same recurrences with binary seeds.
pub fn uw_hat_words(ctx: &TessContext, k: u32) -> Result<(Arc<DegreeWord>, Arc<DegreeWord>)> {
    uw_words_inner(ctx, k, true)
}

/// d_k assembled by splicing: U_k^p for p > 3; (U_k U_{k-1})^3 for p = 3 and
/// k >= 2. d_1 is always 2^p.
pub fn spliced_degree_word(ctx: &TessContext, k: u32) -> Result<DegreeWord> {
    check_pre(ctx, k)?;
    let (p, q) = (ctx.p(), ctx.q());
    if k == 1 {
        return Ok(DegreeWord::new(vec![2u8; p as usize], p, q));
    }
    check_budget(ctx, &ctx.sequences(k)?.perimeter)?;
    let mut out = Vec::new();
    if p == 3 {
        let (u, _) = uw_words(ctx, k)?;
        let (u_prev, _) = uw_words(ctx, k - 1)?;
        for _ in 0..3 {
            out.extend_from_slice(u.symbols());
            out.extend_from_slice(u_prev.symbols());
        }
    } else {
        let (u, _) = uw_words(ctx, k)?;
        for _ in 0..p {
            out.extend_from_slice(u.symbols());
        }
    }
    Ok(DegreeWord::new(out, p, q))
}

/// Lengths (u_k, w_k) in closed form through the gamma sequence.
pub fn word_lengths(ctx: &TessContext, k: u32) -> Result<(BigInt, BigInt)> {
    check_pre(ctx, k)?;
    let (p, q) = (ctx.p(), ctx.q());
    let g = ctx.gamma(k);
    let g1 = ctx.gamma(k - 1);
    let u = if p == 3 { g.clone() } else { &g + &g1 };
    let w = if p == 3 {
        &g - &g1
    } else if q == 3 {
        // gamma_{-1} = -1 extends the recurrence below k = 1
        let g2 = if k >= 2 {
            ctx.gamma(k - 2)
        } else {
            -BigInt::one()
        };
        &g - &g2
    } else {
        &g - &(BigInt::from(p - 3) * &g1)
    };
    Ok((u, w))
}

/// Prefix of the limit of the W_k words, long enough to cover `n` symbols.
pub fn w_limit_prefix(ctx: &TessContext, n: usize) -> Result<DegreeWord> {
    check_pre(ctx, 1)?;
    check_budget(ctx, &BigInt::from(n as u64))?;
    let mut k = 1u32;
    loop {
        let (_, w_len) = word_lengths(ctx, k)?;
        if w_len >= BigInt::from(n as u64) {
            break;
        }
        k += 1;
    }
    let (_, w) = uw_words(ctx, k)?;
    Ok(DegreeWord::new(
        w.symbols()[..n].to_vec(),
        ctx.p(),
        ctx.q(),
    ))
}

/// The Sturmian word of beta from the floor definition:
/// B(i) = floor((i+1) beta) - floor(i beta) - floor(beta), for i = 1..=n.
pub fn sturmian_prefix(ctx: &TessContext, n: usize) -> Result<DegreeWord> {
    let (_, beta) = ctx.require_hyperbolic()?;
    if n == 0 {
        return Err(Error::domain("prefix length must be at least 1"));
    }
    check_budget(ctx, &BigInt::from(n as u64))?;
    let fl_beta = beta.floor();
    let mut out = Vec::with_capacity(n);
    let mut prev = fl_beta.clone(); // floor(1 * beta)
    for i in 1..=n {
        let next = (beta * ctx.field_int(BigInt::from(i as u64 + 1)).unwrap()).floor();
        let sym = &next - &prev - &fl_beta;
        prev = next;
        debug_assert!(sym == BigInt::zero() || sym == BigInt::one());
        out.push(sym.to_u8().unwrap_or(0));
    }
    Ok(DegreeWord::new(out, ctx.p(), ctx.q()))
}

/// Prefix of the characteristic word built from the continued fraction:
/// B_0 = 0, B_1 = 0^(b1-1) 1, B_k = B_{k-1}^(b_k) B_{k-2}.
pub fn shallit_prefix(cf: &ContinuedFraction, n: usize) -> Result<DegreeWord> {
    if cf.period.is_empty() {
        return Err(Error::DegenerateInput(
            "continued fraction has an empty period".into(),
        ));
    }
    if n == 0 {
        return Err(Error::domain("prefix length must be at least 1"));
    }
    let mut quot = cf.quotients();
    let b1 = quot.next().expect("nonempty quotient stream");
    if b1 < 1 {
        return Err(Error::DegenerateInput(
            "first partial quotient must be at least 1".into(),
        ));
    }
    let mut prev: Vec<u8> = vec![0];
    let mut cur: Vec<u8> = vec![0; (b1 - 1) as usize];
    cur.push(1);
    while cur.len() < n {
        let b = quot.next().expect("periodic stream") as usize;
        let new_len = cur
            .len()
            .checked_mul(b)
            .and_then(|l| l.checked_add(prev.len()))
            .ok_or(Error::Budget {
                needed: u64::MAX,
                budget: crate::context::default_symbol_budget(),
            })?;
        let mut next = Vec::with_capacity(new_len);
        for _ in 0..b {
            next.extend_from_slice(&cur);
        }
        next.extend_from_slice(&prev);
        prev = std::mem::replace(&mut cur, next);
    }
    cur.truncate(n);
    Ok(DegreeWord::new(cur, 0, 0))
}

/// Closed-form continued fraction of beta, matched on the signature family.
pub fn continued_fraction_closed(ctx: &TessContext) -> Result<ContinuedFraction> {
    ctx.require_hyperbolic()?;
    let (p, q) = (ctx.p() as u64, ctx.q() as u64);
    let cf = if p == 3 {
        ContinuedFraction {
            b0: q - 4,
            preperiod: vec![],
            period: vec![1, q - 6],
        }
    } else if p == 4 {
        ContinuedFraction {
            b0: q - 3,
            preperiod: vec![],
            period: vec![2, q - 4],
        }
    } else if q == 3 {
        ContinuedFraction {
            b0: 0,
            preperiod: vec![1, p - 5],
            period: vec![1, p - 6],
        }
    } else if q == 4 {
        ContinuedFraction {
            b0: 1,
            preperiod: vec![1],
            period: vec![p - 4, 2],
        }
    } else {
        ContinuedFraction {
            b0: q - 3,
            preperiod: vec![],
            period: vec![1, p - 4, 1, q - 4],
        }
    };
    debug_assert!(cf.period.iter().all(|&b| b >= 1));
    debug_assert!(cf.preperiod.iter().all(|&b| b >= 1));
    Ok(cf)
}

/// Partial quotients of an arbitrary positive irrational of the field, by the
/// exact algorithm b = floor(x), x <- 1/(x - b).
pub fn continued_fraction_generic(x: &QuadExt, terms: usize) -> Result<Vec<BigInt>> {
    if x.sign() <= 0 {
        return Err(Error::domain("continued fraction input must be positive"));
    }
    if terms == 0 {
        return Err(Error::domain("need at least one term"));
    }
    let mut out = Vec::with_capacity(terms);
    let mut x = x.clone();
    loop {
        let b = x.floor();
        out.push(b.clone());
        if out.len() == terms {
            return Ok(out);
        }
        let frac = x.checked_sub(
            &QuadExt::new(
                num::rational::BigRational::from_integer(b),
                num::rational::BigRational::zero(),
                x.discriminant().clone(),
            )
            .expect("same discriminant"),
        )?;
        if frac.is_zero() {
            return Err(Error::DegenerateInput(
                "rational input: remainder reached zero".into(),
            ));
        }
        x = frac.inverse()?;
    }
}

/// The i-th symbol of the limit word W, in closed form:
/// W(i) = q - floor(i beta) + floor((i-1) beta).
pub fn w_closed(ctx: &TessContext, i: u64) -> Result<u8> {
    let (_, beta) = ctx.require_hyperbolic()?;
    if i == 0 {
        return Err(Error::domain("index i must be at least 1"));
    }
    let fi = (beta * ctx.field_int(BigInt::from(i)).unwrap()).floor();
    let fi1 = (beta * ctx.field_int(BigInt::from(i - 1)).unwrap()).floor();
    let val = BigInt::from(ctx.q()) - fi + fi1;
    val.to_u8()
        .ok_or_else(|| Error::domain(format!("degree out of byte range: {val}")))
}

/// Cumulative sums of (q - d_k(i)) over a cached d_k, used to invert the
/// tile-count condition.
pub(crate) fn degree_gap_cumsums(ctx: &TessContext, k: u32) -> Result<Arc<Vec<u64>>> {
    if let Some(c) = ctx.words.lock().unwrap().cums.get(&k) {
        return Ok(c.clone());
    }
    let word = substitute_degree_word(ctx, k)?;
    let q = ctx.q() as u64;
    let mut cums = Vec::with_capacity(word.len());
    let mut acc = 0u64;
    for &c in word.symbols() {
        acc += q - c as u64;
        cums.push(acc);
    }
    let arc = Arc::new(cums);
    ctx.words
        .lock()
        .unwrap()
        .cums
        .entry(k)
        .or_insert_with(|| arc.clone());
    Ok(arc)
}
