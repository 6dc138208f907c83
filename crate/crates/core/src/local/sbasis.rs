//! Standard bases of submodules of `O^r` for the negative degree reverse
//! lexicographic ordering (position over term).
//!
//! Coefficients are kept as primitive integer vectors. Two complementary
//! strategies are combined:
//!
//! * Degree truncation: the standard basis of `M + m^N O^r` is computed with
//!   every term of degree `>= N` discarded, which only involves finitely
//!   many monomials. If no standard monomial reaches degree `N - 1`, then
//!   `m^{N-1} O^r` lies in `M` by Nakayama's lemma and the result is exact.
//! * Lazard's method: a homogeneous Gröbner basis of the homogenised
//!   generators, dehomogenised afterwards. This always terminates and
//!   decides infinite colength.

use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

use crate::poly::Poly;

use super::LocalError;

pub(crate) type Exp = SmallVec<[u16; 8]>;

#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Mon {
    pub comp: u16,
    pub exp: Exp,
    pub deg: u32,
}

impl Mon {
    pub fn new(comp: u16, exp: Exp) -> Self {
        let deg = exp.iter().map(|&e| e as u32).sum();
        Mon { comp, exp, deg }
    }

    fn divides(&self, other: &Mon) -> bool {
        self.comp == other.comp && self.deg <= other.deg && self.exp.iter().zip(&other.exp).all(|(a, b)| a <= b)
    }

    fn lcm(&self, other: &Mon) -> Mon {
        Mon::new(self.comp, self.exp.iter().zip(&other.exp).map(|(a, b)| *a.max(b)).collect())
    }

    fn div(&self, d: &Mon) -> Exp {
        self.exp.iter().zip(&d.exp).map(|(a, b)| a - b).collect()
    }

    fn coprime(&self, other: &Mon) -> bool {
        self.exp.iter().zip(&other.exp).all(|(a, b)| *a == 0 || *b == 0)
    }

    fn times(&self, e: &Exp, edeg: u32) -> Mon {
        Mon { comp: self.comp, exp: self.exp.iter().zip(e).map(|(a, b)| a + b).collect(), deg: self.deg + edeg }
    }

    fn pure_power_var(&self) -> Option<usize> {
        let mut nz = (0..self.exp.len()).filter(|&i| self.exp[i] > 0);
        match (nz.next(), nz.next()) {
            (Some(i), None) => Some(i),
            _ => None,
        }
    }
}

fn revlex(a: &[u16], b: &[u16]) -> Ordering {
    for (x, y) in a.iter().zip(b).rev() {
        if x != y {
            return y.cmp(x);
        }
    }
    Ordering::Equal
}

/// Local ordering: `Greater` means `a` is the larger (leading) monomial.
pub fn cmp_local(a: &Mon, b: &Mon) -> Ordering {
    b.comp.cmp(&a.comp).then(b.deg.cmp(&a.deg)).then_with(|| revlex(&a.exp, &b.exp))
}

/// Global ordering on homogenised monomials (homogenising variable last):
/// degree, then the larger power of the homogenising variable, then the
/// reverse lexicographic order on the rest. On homogeneous elements this
/// induces the local ordering after setting the homogenising variable to one.
fn cmp_homogeneous(a: &Mon, b: &Mon) -> Ordering {
    let n = a.exp.len() - 1;
    b.comp
        .cmp(&a.comp)
        .then(a.deg.cmp(&b.deg))
        .then(a.exp[n].cmp(&b.exp[n]))
        .then_with(|| revlex(&a.exp[..n], &b.exp[..n]))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Order {
    Local,
    Homogeneous,
}

impl Order {
    fn cmp(self, a: &Mon, b: &Mon) -> Ordering {
        match self {
            Order::Local => cmp_local(a, b),
            Order::Homogeneous => cmp_homogeneous(a, b),
        }
    }
}

/// Sparse vector of terms sorted descending in the active ordering.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SPoly {
    pub terms: Vec<(Mon, BigInt)>,
}

impl SPoly {
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lm(&self) -> &Mon {
        &self.terms[0].0
    }

    fn lc(&self) -> &BigInt {
        &self.terms[0].1
    }

    fn sorted(mut terms: Vec<(Mon, BigInt)>, ord: Order) -> SPoly {
        terms.sort_by(|a, b| ord.cmp(&b.0, &a.0));
        let mut out: Vec<(Mon, BigInt)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc += c,
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        let mut p = SPoly { terms: out };
        p.make_primitive();
        p
    }

    fn truncate(&mut self, bound: Option<u32>) {
        if let Some(d) = bound {
            self.terms.retain(|(m, _)| m.deg < d);
        }
    }

    fn make_primitive(&mut self) {
        if self.terms.is_empty() {
            return;
        }
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        if self.terms[0].1.is_negative() {
            g = -g;
        }
        if !g.is_one() {
            for (_, c) in &mut self.terms {
                *c = &*c / &g;
            }
        }
    }

    /// `b*s*self - a*m*other`, with `a, b` cancelling the leading terms of
    /// `s*self` and `m*other`.
    fn combine(&self, other: &SPoly, mult: &Exp, self_mult: &Exp, bound: Option<u32>, ord: Order) -> SPoly {
        let g = self.lc().gcd(other.lc());
        let b = other.lc() / &g;
        let a = self.lc() / &g;
        let md: u32 = mult.iter().map(|&e| e as u32).sum();
        let sd: u32 = self_mult.iter().map(|&e| e as u32).sum();
        let keep = |m: &Mon| bound.is_none_or(|d| m.deg < d);
        let left = self.terms.iter().skip(1).map(|(m, c)| (m.times(self_mult, sd), c * &b));
        let right = other.terms.iter().skip(1).map(|(m, c)| (m.times(mult, md), -(c * &a)));
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut l = left.filter(|(m, _)| keep(m)).peekable();
        let mut r = right.filter(|(m, _)| keep(m)).peekable();
        loop {
            let o = match (l.peek(), r.peek()) {
                (None, None) => break,
                (Some(_), None) => Ordering::Greater,
                (None, Some(_)) => Ordering::Less,
                (Some(x), Some(y)) => ord.cmp(&x.0, &y.0),
            };
            match o {
                Ordering::Greater => out.push(l.next().unwrap()),
                Ordering::Less => out.push(r.next().unwrap()),
                Ordering::Equal => {
                    let (m, c1) = l.next().unwrap();
                    let (_, c2) = r.next().unwrap();
                    let c = c1 + c2;
                    if !c.is_zero() {
                        out.push((m, c));
                    }
                }
            }
        }
        let mut p = SPoly { terms: out };
        p.make_primitive();
        p
    }

    fn homogenize(&self) -> SPoly {
        let top = self.terms.iter().map(|(m, _)| m.deg).max().unwrap_or(0);
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = m.exp.clone();
                e.push((top - m.deg) as u16);
                (Mon { comp: m.comp, exp: e, deg: top }, c.clone())
            })
            .collect();
        SPoly::sorted(terms, Order::Homogeneous)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct EngineOptions {
    pub degree_cap: u32,
    pub max_basis: usize,
    /// Largest coefficient, in bits, tolerated in the homogeneous fallback run.
    pub max_coefficient_bits: u64,
}

impl Default for EngineOptions {
    fn default() -> Self {
        EngineOptions { degree_cap: 60, max_basis: 50_000, max_coefficient_bits: 4096 }
    }
}

/// Result of a standard basis computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeadingData {
    pub nvars: usize,
    pub rank: usize,
    /// Minimal generators of the leading module below the corner, sorted.
    pub leading: Vec<Mon>,
    /// Degree `D` such that every monomial of degree `>= D` is a leading monomial.
    pub corner: Option<u32>,
}

impl LeadingData {
    /// Number of standard monomials, or `None` if infinite.
    pub fn dimension(&self) -> Option<u64> {
        let mut total = 0u64;
        for c in 0..self.rank as u16 {
            total += standard_monomials(self.nvars, c, &self.leading, self.corner)?.0;
        }
        Some(total)
    }

    /// Highest degree of a standard monomial, if the colength is finite and nonzero.
    pub fn max_standard_degree(&self) -> Option<u32> {
        let mut best = None;
        for c in 0..self.rank as u16 {
            let (count, d) = standard_monomials(self.nvars, c, &self.leading, self.corner)?;
            if count > 0 {
                best = Some(best.map_or(d, |b: u32| b.max(d)));
            }
        }
        best
    }
}

/// Counts standard monomials of component `comp` below degree `below` (if
/// given) and returns their maximal degree. `None` if the count is infinite.
pub(crate) fn standard_monomials(nvars: usize, comp: u16, leading: &[Mon], below: Option<u32>) -> Option<(u64, u32)> {
    let lms: Vec<&Mon> = leading.iter().filter(|m| m.comp == comp).collect();
    if lms.iter().any(|m| m.deg == 0) || below == Some(0) {
        return Some((0, 0));
    }
    if below.is_none() {
        let mut has_power = vec![false; nvars];
        for m in &lms {
            if let Some(i) = m.pure_power_var() {
                has_power[i] = true;
            }
        }
        if has_power.iter().any(|h| !h) {
            return None;
        }
    }
    let mut count = 0u64;
    let mut maxdeg = 0u32;
    let mut stack: Vec<(Exp, usize, u32)> = vec![(smallvec::smallvec![0; nvars], 0, 0)];
    while let Some((e, first, deg)) = stack.pop() {
        count += 1;
        maxdeg = maxdeg.max(deg);
        if below.is_some_and(|b| deg + 1 >= b) {
            continue;
        }
        for i in first..nvars {
            let mut e2 = e.clone();
            e2[i] += 1;
            let m = Mon { comp, exp: e2, deg: deg + 1 };
            if !lms.iter().any(|l| l.divides(&m)) {
                stack.push((m.exp, i, deg + 1));
            }
        }
    }
    Some((count, maxdeg))
}

/// Converts module elements (one polynomial per component) to integer form.
pub(crate) fn to_spoly(components: &[Poly]) -> SPoly {
    let mut den = BigInt::one();
    for p in components {
        for (_, c) in p.terms() {
            den = den.lcm(c.denom());
        }
    }
    let mut terms = Vec::new();
    for (comp, p) in components.iter().enumerate() {
        for (m, c) in p.terms() {
            let exp: Exp = m.exponents().iter().map(|&e| e as u16).collect();
            let v = c * num_rational::BigRational::from_integer(den.clone());
            terms.push((Mon::new(comp as u16, exp), v.to_integer()));
        }
    }
    SPoly::sorted(terms, Order::Local)
}

enum Item {
    Gen(SPoly),
    Pair(usize, usize),
}

/// Buchberger's algorithm with plain reduction, either on degree-truncated
/// local data or on homogeneous data.
struct Engine {
    /// Number of variables of the original ring.
    nvars: usize,
    rank: usize,
    opts: EngineOptions,
    order: Order,
    basis: Vec<Option<SPoly>>,
    leading: Vec<Mon>,
    items: Vec<Option<Item>>,
    queue: BinaryHeap<Reverse<(u32, usize)>>,
    /// Item indices of queued pairs, for the chain criterion.
    pending: Vec<usize>,
    /// Every term of degree `>= bound` is dropped (it lies in the module).
    bound: Option<u32>,
}

enum Outcome {
    Complete,
    /// The homogeneous run found a corner: `m^c O^r` lies in the module.
    Corner(u32),
}

impl Engine {
    fn new(nvars: usize, rank: usize, opts: EngineOptions, order: Order, bound: Option<u32>) -> Self {
        Engine {
            nvars,
            rank,
            opts,
            order,
            basis: Vec::new(),
            leading: Vec::new(),
            items: Vec::new(),
            queue: BinaryHeap::new(),
            pending: Vec::new(),
            bound,
        }
    }

    fn normal_form(&self, mut h: SPoly) -> Result<SPoly, LocalError> {
        'outer: while !h.is_zero() {
            for g in self.basis.iter().flatten() {
                if g.lm().divides(h.lm()) {
                    let q = h.lm().div(g.lm());
                    let one: Exp = smallvec::smallvec![0; q.len()];
                    h = h.combine(g, &q, &one, self.bound, self.order);
                    self.check_coefficients(&h)?;
                    continue 'outer;
                }
            }
            break;
        }
        Ok(h)
    }

    /// The homogeneous run can blow up in coefficient size over Q; give up
    /// instead of running for minutes. Truncated local runs are not limited.
    fn check_coefficients(&self, h: &SPoly) -> Result<(), LocalError> {
        if self.order == Order::Local {
            return Ok(());
        }
        let limit = self.opts.max_coefficient_bits;
        match h.terms.iter().map(|t| t.1.bits()).max() {
            Some(bits) if bits > limit => Err(LocalError::CoefficientLimit { bits: limit }),
            _ => Ok(()),
        }
    }

    /// Leading monomials seen in the original ring.
    fn local_leading(&self) -> Vec<Mon> {
        match self.order {
            Order::Local => self.leading.clone(),
            Order::Homogeneous => {
                self.leading.iter().map(|m| Mon::new(m.comp, m.exp[..self.nvars].iter().copied().collect())).collect()
            }
        }
    }

    /// Degree `c` with every monomial of degree `>= c` a leading monomial, if known.
    fn corner(&self) -> Option<u32> {
        let lms = self.local_leading();
        let mut d = 0u32;
        for c in 0..self.rank as u16 {
            match standard_monomials(self.nvars, c, &lms, self.bound) {
                None => return None,
                Some((0, _)) => {}
                Some((_, maxdeg)) => d = d.max(maxdeg + 1),
            }
        }
        Some(d)
    }

    fn tighten_bound(&mut self, d: u32) {
        if self.bound.is_none_or(|b| d < b) {
            self.bound = Some(d);
            for slot in &mut self.basis {
                if let Some(p) = slot {
                    p.truncate(Some(d));
                    if p.is_zero() {
                        *slot = None;
                    }
                }
            }
        }
    }

    fn run(&mut self, gens: &[SPoly]) -> Result<Outcome, LocalError> {
        for g in gens {
            if !g.is_zero() {
                let idx = self.items.len();
                self.items.push(Some(Item::Gen(g.clone())));
                self.queue.push(Reverse((g.lm().deg, idx)));
            }
        }
        while let Some(Reverse((_, idx))) = self.queue.pop() {
            // pairs removed by the chain criterion leave an empty slot
            let Some(item) = self.items[idx].take() else { continue };
            let h = match item {
                Item::Gen(mut p) => {
                    p.truncate(self.bound);
                    p
                }
                Item::Pair(i, j) => match (&self.basis[i], &self.basis[j]) {
                    (Some(f), Some(g)) => {
                        let l = f.lm().lcm(g.lm());
                        f.combine(g, &l.div(g.lm()), &l.div(f.lm()), self.bound, self.order)
                    }
                    _ => continue,
                },
            };
            if h.is_zero() {
                continue;
            }
            let h = self.normal_form(h)?;
            if h.is_zero() {
                continue;
            }
            let lm = h.lm().clone();
            let limit = match self.order {
                Order::Local => self.opts.degree_cap,
                Order::Homogeneous => 3 * self.opts.degree_cap,
            };
            if lm.deg > limit || self.basis.len() >= self.opts.max_basis {
                return Err(LocalError::CapExceeded { cap: self.opts.degree_cap });
            }
            match self.order {
                Order::Local => self.add_all_pairs(&lm),
                Order::Homogeneous => self.update_pairs(&lm),
            }
            self.leading.push(lm);
            self.basis.push(Some(h));
            if let Some(c) = self.corner() {
                match self.order {
                    Order::Local => self.tighten_bound(c),
                    Order::Homogeneous => return Ok(Outcome::Corner(c)),
                }
            }
        }
        Ok(Outcome::Complete)
    }

    fn queue_pair(&mut self, i: usize, k: usize, lcm_deg: u32) -> usize {
        self.items.push(Some(Item::Pair(i, k)));
        let idx = self.items.len() - 1;
        self.queue.push(Reverse((lcm_deg, idx)));
        idx
    }

    /// Queues every pair with the new element `k = basis.len()` except those
    /// removed by the product criterion.
    fn add_all_pairs(&mut self, lm: &Mon) {
        let k = self.basis.len();
        for i in 0..k {
            let Some(g) = &self.basis[i] else { continue };
            let glm = g.lm();
            // The product criterion is only valid for ideals.
            if glm.comp != lm.comp || (self.rank == 1 && glm.coprime(lm)) {
                continue;
            }
            let d = glm.lcm(lm).deg;
            self.queue_pair(i, k, d);
        }
    }

    /// Gebauer-Moeller update for the new element `k = basis.len()`: drops
    /// new pairs whose lcm is a multiple of another new lcm, and old pairs
    /// made redundant by the chain criterion.
    fn update_pairs(&mut self, lm: &Mon) {
        let k = self.basis.len();
        let coprime = |a: &Mon| self.rank == 1 && a.coprime(lm);
        let candidates: Vec<(usize, Mon, bool)> = (0..k)
            .filter_map(|i| {
                let g = self.basis[i].as_ref()?;
                (g.lm().comp == lm.comp).then(|| (i, g.lm().lcm(lm), coprime(g.lm())))
            })
            .collect();
        let mut kept: Vec<(usize, Mon, bool)> = Vec::new();
        for (pos, (i, l, cop)) in candidates.iter().enumerate() {
            let dominated = candidates[pos + 1..].iter().any(|(_, l2, _)| l2.divides(l))
                || kept.iter().any(|(_, l2, _)| l2.divides(l));
            if *cop || !dominated {
                kept.push((*i, l.clone(), *cop));
            }
        }
        let leading = &self.leading;
        let items = &mut self.items;
        self.pending.retain(|&idx| {
            let Some(Item::Pair(a, b)) = &items[idx] else { return false };
            let lab = leading[*a].lcm(&leading[*b]);
            let redundant = lm.divides(&lab) && leading[*a].lcm(lm) != lab && leading[*b].lcm(lm) != lab;
            if redundant {
                items[idx] = None;
            }
            !redundant
        });
        for (i, l, cop) in kept {
            if !cop {
                let idx = self.queue_pair(i, k, l.deg);
                self.pending.push(idx);
            }
        }
    }

    fn finish(&self) -> LeadingData {
        let mut lms = self.local_leading();
        if let Some(b) = self.bound {
            lms.retain(|m| m.deg < b);
        }
        LeadingData { nvars: self.nvars, rank: self.rank, leading: minimalize(lms), corner: self.bound }
    }
}

fn minimalize(mut lms: Vec<Mon>) -> Vec<Mon> {
    lms.sort_by(|a, b| a.deg.cmp(&b.deg).then_with(|| a.cmp(b)));
    let mut minimal: Vec<Mon> = Vec::new();
    for m in lms {
        if !minimal.iter().any(|g| g.divides(&m)) {
            minimal.push(m);
        }
    }
    minimal.sort();
    minimal
}

/// Standard basis of `M + m^bound O^r`; `None` unless certified equal to that of `M`.
fn truncated_attempt(
    nvars: usize,
    rank: usize,
    gens: &[SPoly],
    opts: EngineOptions,
    bound: u32,
) -> Result<Option<LeadingData>, LocalError> {
    let mut eng = Engine::new(nvars, rank, opts, Order::Local, Some(bound));
    eng.run(gens)?;
    let data = eng.finish();
    let b = data.corner.expect("bounded run");
    if b < bound {
        // Tightened from leading monomials found below the bound: m^b lies in
        // M + m^bound, hence in M.
        return Ok(Some(data));
    }
    for c in 0..rank as u16 {
        let (count, maxdeg) = standard_monomials(nvars, c, &data.leading, Some(b)).expect("bounded");
        if count > 0 && maxdeg + 1 >= b {
            return Ok(None);
        }
    }
    Ok(Some(data))
}

/// Standard basis leading data for the submodule of `O^rank` generated by
/// `gens`.
pub fn leading_data(nvars: usize, rank: usize, gens: &[SPoly], opts: EngineOptions) -> Result<LeadingData, LocalError> {
    let cap_bound = opts.degree_cap + 1;
    for bound in [8u32, 16] {
        if bound <= cap_bound {
            if let Some(d) = truncated_attempt(nvars, rank, gens, opts, bound)? {
                return Ok(d);
            }
        }
    }
    let hom: Vec<SPoly> = gens.iter().filter(|g| !g.is_zero()).map(SPoly::homogenize).collect();
    let mut eng = Engine::new(nvars, rank, opts, Order::Homogeneous, None);
    match eng.run(&hom)? {
        Outcome::Complete => Ok(eng.finish()),
        Outcome::Corner(c) => {
            if c + 1 > cap_bound {
                return Err(LocalError::CapExceeded { cap: opts.degree_cap });
            }
            Ok(truncated_attempt(nvars, rank, gens, opts, c + 1)?
                .expect("corner found by the homogeneous run certifies the truncation"))
        }
    }
}
