//! Finite unital rings with index-coded elements.
//!
//! Every ring element is an index in `0..order`. The index scheme is fixed per
//! ring kind so encodings are stable across runs:
//!
//! * `Zn` — the residue itself.
//! * product `R x S` — pair `(a, b)` coded as `a * |S| + b`.
//! * `M(n, R)` — row-major entry digits, first entry most significant.
//! * `T(n, R)` — same, skipping below-diagonal entries (which are zero).
//! * quotient — position of the coset's canonical representative (its
//!   minimum base index) in the ascending list of representatives.
//! * corner `fRf` — position in the ascending list of member base indices.
//!
//! Add/mul/neg tables are materialized only for orders up to [`TABLE_LIMIT`];
//! larger rings decode on the fly. Structural caches (units, radical, ...)
//! live behind `OnceLock`, so concurrent sweeps fill them once and share.

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, OnceLock};

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Result, RingError};

/// Largest order for which full operation tables are cached.
pub const TABLE_LIMIT: u64 = 256;
/// Default cap on constructed ring order.
pub const DEFAULT_CONSTRUCTION_CAP: u64 = 65_536;
/// Default cap on whole-ring classification sweeps.
pub const DEFAULT_CLASSIFY_CAP: u64 = 4_096;

/// Seed for the sampled axiom check on rings above [`TABLE_LIMIT`].
const AXIOM_SAMPLE_SEED: u64 = 0x52494e47_4c414201;
const AXIOM_SAMPLES: usize = 1_000;

/// Order caps, overridable from the CLI.
#[derive(Clone, Copy, Debug)]
pub struct Caps {
    pub construction: u64,
    pub classify: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            construction: DEFAULT_CONSTRUCTION_CAP,
            classify: DEFAULT_CLASSIFY_CAP,
        }
    }
}

impl Caps {
    /// Raise both caps to admit rings up to `n` (CLI `--max-order`).
    pub fn with_max_order(n: u64) -> Self {
        let d = Caps::default();
        Caps {
            construction: d.construction.max(n),
            classify: n,
        }
    }
}

static NEXT_RING_ID: AtomicU64 = AtomicU64::new(1);

/// An element of a specific ring instance. Cheap to copy; ops verify that the
/// element belongs to the ring they are called on.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Element {
    pub(crate) ring_id: u64,
    pub index: u64,
}

/// Plain data form of an element, used by literal parsing and rendering.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ElementLiteral {
    Int(i64),
    Tuple(Box<ElementLiteral>, Box<ElementLiteral>),
    Matrix(Vec<Vec<ElementLiteral>>),
}

impl fmt::Display for ElementLiteral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ElementLiteral::Int(v) => write!(f, "{v}"),
            ElementLiteral::Tuple(a, b) => write!(f, "({a},{b})"),
            ElementLiteral::Matrix(rows) => {
                write!(f, "[")?;
                for (i, row) in rows.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "[")?;
                    for (j, e) in row.iter().enumerate() {
                        if j > 0 {
                            write!(f, ",")?;
                        }
                        write!(f, "{e}")?;
                    }
                    write!(f, "]")?;
                }
                write!(f, "]")
            }
        }
    }
}

pub(crate) enum RingKind {
    Zn {
        n: u64,
    },
    Product {
        left: FiniteRing,
        right: FiniteRing,
    },
    Matrix {
        n: usize,
        base: FiniteRing,
    },
    Triangular {
        n: usize,
        base: FiniteRing,
    },
    Quotient {
        base: FiniteRing,
        ideal: Vec<u64>,
        reps: Vec<u64>,
        coset_of: Vec<u64>,
        mod_radical: bool,
    },
    Corner {
        base: FiniteRing,
        idem: u64,
        members: Vec<u64>,
    },
}

/// Units with recorded two-sided inverses.
pub(crate) struct UnitData {
    pub members: Vec<u64>,
    pub is_unit: Vec<bool>,
    pub inverse: Vec<Option<u64>>,
}

/// A structural subset with a membership bitmap.
pub(crate) struct SetData {
    pub members: Vec<u64>,
    pub contains: Vec<bool>,
}

impl SetData {
    pub fn from_members(members: Vec<u64>, order: u64) -> SetData {
        let mut contains = vec![false; order as usize];
        for &m in &members {
            contains[m as usize] = true;
        }
        SetData { members, contains }
    }
}

#[derive(Default)]
pub(crate) struct Caches {
    pub units: OnceLock<UnitData>,
    // The radical computation re-verifies that the quasi-regular set is a
    // two-sided ideal; a violation is an internal defect, kept as Err.
    pub radical: OnceLock<std::result::Result<SetData, String>>,
    pub j_sharp: OnceLock<SetData>,
    pub idempotents: OnceLock<Vec<u64>>,
    pub qnil: OnceLock<SetData>,
    pub center: OnceLock<Vec<u64>>,
}

pub(crate) struct RingInner {
    id: u64,
    order: u64,
    zero: u64,
    one: u64,
    pub(crate) kind: RingKind,
    add_table: Option<Vec<u16>>,
    mul_table: Option<Vec<u16>>,
    neg_table: Option<Vec<u16>>,
    pub(crate) caches: Caches,
}

/// A finite unital ring. Clones share the same instance and caches.
#[derive(Clone)]
pub struct FiniteRing {
    inner: Arc<RingInner>,
}

impl fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteRing({}, order {})", self.descriptor(), self.order())
    }
}

impl fmt::Display for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.descriptor())
    }
}

fn finish(kind: RingKind, order: u64) -> FiniteRing {
    let mut inner = RingInner {
        id: NEXT_RING_ID.fetch_add(1, Ordering::Relaxed),
        order,
        zero: 0,
        one: 0,
        kind,
        add_table: None,
        mul_table: None,
        neg_table: None,
        caches: Caches::default(),
    };
    inner.zero = inner.zero_raw();
    inner.one = inner.one_raw();
    if order <= TABLE_LIMIT {
        let n = order as usize;
        let mut add = vec![0u16; n * n];
        let mut mul = vec![0u16; n * n];
        let mut neg = vec![0u16; n];
        for i in 0..order {
            neg[i as usize] = inner.neg_raw(i) as u16;
            for j in 0..order {
                add[(i * order + j) as usize] = inner.add_raw(i, j) as u16;
                mul[(i * order + j) as usize] = inner.mul_raw(i, j) as u16;
            }
        }
        inner.add_table = Some(add);
        inner.mul_table = Some(mul);
        inner.neg_table = Some(neg);
    }
    FiniteRing { inner: Arc::new(inner) }
}

/// Z/nZ with elements 0..n.
pub fn make_zn(n: u64, cap: u64) -> Result<FiniteRing> {
    if n == 0 {
        return Err(RingError::InvalidParameter("modulus must be >= 1".into()));
    }
    if n > cap {
        return Err(RingError::CapExceeded { required: n, allowed: cap });
    }
    Ok(finish(RingKind::Zn { n }, n))
}

/// Direct product with componentwise operations.
pub fn make_product(left: &FiniteRing, right: &FiniteRing, cap: u64) -> Result<FiniteRing> {
    let required = (left.order() as u128) * (right.order() as u128);
    if required > cap as u128 {
        return Err(RingError::CapExceeded {
            required: required.min(u64::MAX as u128) as u64,
            allowed: cap,
        });
    }
    Ok(finish(
        RingKind::Product { left: left.clone(), right: right.clone() },
        required as u64,
    ))
}

fn power_order(base: u64, exp: u32, cap: u64) -> Result<u64> {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base as u128);
    }
    if acc > cap as u128 {
        return Err(RingError::CapExceeded {
            required: acc.min(u64::MAX as u128) as u64,
            allowed: cap,
        });
    }
    Ok(acc as u64)
}

/// Full n-by-n matrix ring over `base`.
pub fn make_matrix_ring(base: &FiniteRing, n: usize, cap: u64) -> Result<FiniteRing> {
    if n == 0 {
        return Err(RingError::InvalidParameter("matrix dimension must be >= 1".into()));
    }
    let order = power_order(base.order(), (n * n) as u32, cap)?;
    Ok(finish(RingKind::Matrix { n, base: base.clone() }, order))
}

/// Upper triangular n-by-n matrix ring over `base`.
pub fn make_triangular_ring(base: &FiniteRing, n: usize, cap: u64) -> Result<FiniteRing> {
    if n == 0 {
        return Err(RingError::InvalidParameter("matrix dimension must be >= 1".into()));
    }
    let order = power_order(base.order(), (n * (n + 1) / 2) as u32, cap)?;
    Ok(finish(RingKind::Triangular { n, base: base.clone() }, order))
}

/// Quotient by a verified two-sided ideal, given as a set of element indices.
/// `mod_radical` tags quotients by the Jacobson radical so their descriptor
/// round-trips through the `modJ(...)` syntax.
pub fn make_quotient(base: &FiniteRing, ideal: &[u64], mod_radical: bool) -> Result<FiniteRing> {
    let order = base.order();
    let mut sorted: Vec<u64> = ideal.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.iter().any(|&x| x >= order) {
        return Err(RingError::InvalidIdeal("member index out of range".into()));
    }
    if !sorted.contains(&base.zero_idx()) {
        return Err(RingError::InvalidIdeal("does not contain zero".into()));
    }
    let inside = {
        let mut b = vec![false; order as usize];
        for &x in &sorted {
            b[x as usize] = true;
        }
        b
    };
    for &x in &sorted {
        for &y in &sorted {
            if !inside[base.add_idx(x, y) as usize] {
                return Err(RingError::InvalidIdeal(format!(
                    "not additively closed: {x} + {y}"
                )));
            }
        }
        for r in 0..order {
            if !inside[base.mul_idx(r, x) as usize] {
                return Err(RingError::InvalidIdeal(format!(
                    "not closed under left multiplication: {r} * {x}"
                )));
            }
            if !inside[base.mul_idx(x, r) as usize] {
                return Err(RingError::InvalidIdeal(format!(
                    "not closed under right multiplication: {x} * {r}"
                )));
            }
        }
    }
    // Cosets partition the ring; the first unseen element in ascending order
    // is its coset's minimum, hence the canonical representative.
    let mut coset_of = vec![u64::MAX; order as usize];
    let mut reps = Vec::with_capacity((order / sorted.len() as u64) as usize);
    for x in 0..order {
        if coset_of[x as usize] != u64::MAX {
            continue;
        }
        let q = reps.len() as u64;
        for &i in &sorted {
            let m = base.add_idx(x, i);
            if coset_of[m as usize] != u64::MAX && coset_of[m as usize] != q {
                return Err(RingError::Internal("coset partition clash".into()));
            }
            coset_of[m as usize] = q;
        }
        reps.push(x);
    }
    let qorder = reps.len() as u64;
    Ok(finish(
        RingKind::Quotient {
            base: base.clone(),
            ideal: sorted,
            reps,
            coset_of,
            mod_radical,
        },
        qorder,
    ))
}

/// Corner ring fRf for an idempotent f; its identity is f.
pub fn make_corner(base: &FiniteRing, f: u64) -> Result<FiniteRing> {
    if f >= base.order() {
        return Err(RingError::IndexOutOfRange { index: f, order: base.order() });
    }
    if base.mul_idx(f, f) != f {
        return Err(RingError::NotIdempotent);
    }
    let mut members: Vec<u64> = (0..base.order())
        .map(|r| base.mul_idx(base.mul_idx(f, r), f))
        .collect();
    members.sort_unstable();
    members.dedup();
    let order = members.len() as u64;
    Ok(finish(RingKind::Corner { base: base.clone(), idem: f, members }, order))
}

impl FiniteRing {
    pub fn order(&self) -> u64 {
        self.inner.order
    }

    pub(crate) fn id(&self) -> u64 {
        self.inner.id
    }

    pub(crate) fn caches(&self) -> &Caches {
        &self.inner.caches
    }

    pub fn zero_idx(&self) -> u64 {
        self.inner.zero
    }

    pub fn one_idx(&self) -> u64 {
        self.inner.one
    }

    /// Wrap an index after a bounds check.
    pub fn element(&self, index: u64) -> Result<Element> {
        if index >= self.order() {
            return Err(RingError::IndexOutOfRange { index, order: self.order() });
        }
        Ok(Element { ring_id: self.id(), index })
    }

    fn check(&self, e: Element) -> Result<u64> {
        if e.ring_id != self.id() {
            return Err(RingError::RingMismatch);
        }
        Ok(e.index)
    }

    pub fn add(&self, a: Element, b: Element) -> Result<Element> {
        let (i, j) = (self.check(a)?, self.check(b)?);
        Ok(Element { ring_id: self.id(), index: self.add_idx(i, j) })
    }

    pub fn sub(&self, a: Element, b: Element) -> Result<Element> {
        let (i, j) = (self.check(a)?, self.check(b)?);
        Ok(Element { ring_id: self.id(), index: self.sub_idx(i, j) })
    }

    pub fn mul(&self, a: Element, b: Element) -> Result<Element> {
        let (i, j) = (self.check(a)?, self.check(b)?);
        Ok(Element { ring_id: self.id(), index: self.mul_idx(i, j) })
    }

    pub fn neg(&self, a: Element) -> Result<Element> {
        let i = self.check(a)?;
        Ok(Element { ring_id: self.id(), index: self.neg_idx(i) })
    }

    /// Index-level addition (no provenance check; callers stay in one ring).
    #[inline]
    pub fn add_idx(&self, i: u64, j: u64) -> u64 {
        debug_assert!(i < self.order() && j < self.order());
        match &self.inner.add_table {
            Some(t) => t[(i * self.inner.order + j) as usize] as u64,
            None => self.inner.add_raw(i, j),
        }
    }

    #[inline]
    pub fn mul_idx(&self, i: u64, j: u64) -> u64 {
        debug_assert!(i < self.order() && j < self.order());
        match &self.inner.mul_table {
            Some(t) => t[(i * self.inner.order + j) as usize] as u64,
            None => self.inner.mul_raw(i, j),
        }
    }

    #[inline]
    pub fn neg_idx(&self, i: u64) -> u64 {
        debug_assert!(i < self.order());
        match &self.inner.neg_table {
            Some(t) => t[i as usize] as u64,
            None => self.inner.neg_raw(i),
        }
    }

    #[inline]
    pub fn sub_idx(&self, i: u64, j: u64) -> u64 {
        self.add_idx(i, self.neg_idx(j))
    }

    /// k-fold sum of the identity, for integer shifts like a ± 5·1.
    pub fn scalar(&self, k: i64) -> u64 {
        let mut acc = self.zero_idx();
        let m = k.rem_euclid(self.order() as i64).min(self.order() as i64) as u64;
        // order <= 65536, so the plain loop is fine even without the additive
        // order of 1 dividing anything convenient.
        for _ in 0..m {
            acc = self.add_idx(acc, self.one_idx());
        }
        acc
    }

    /// DSL-syntax descriptor for expressible kinds; display-only labels for
    /// quotients by arbitrary ideals and for corner rings.
    pub fn descriptor(&self) -> String {
        match &self.inner.kind {
            RingKind::Zn { n } => format!("Z{n}"),
            RingKind::Product { left, right } => {
                let r = right.descriptor();
                let r = if matches!(right.inner.kind, RingKind::Product { .. }) {
                    format!("({r})")
                } else {
                    r
                };
                format!("{} x {}", left.descriptor(), r)
            }
            RingKind::Matrix { n, base } => format!("M({n},{})", base.descriptor()),
            RingKind::Triangular { n, base } => format!("T({n},{})", base.descriptor()),
            RingKind::Quotient { base, ideal, mod_radical, .. } => {
                if *mod_radical {
                    format!("modJ({})", base.descriptor())
                } else {
                    format!("quot({},{})", base.descriptor(), ideal.len())
                }
            }
            RingKind::Corner { base, idem, .. } => {
                format!("corner({},{})", base.descriptor(), idem)
            }
        }
    }

    /// For a full matrix ring, its dimension and base ring.
    pub fn matrix_parts(&self) -> Option<(usize, &FiniteRing)> {
        match &self.inner.kind {
            RingKind::Matrix { n, base } => Some((*n, base)),
            _ => None,
        }
    }

    /// For an upper triangular matrix ring, its dimension and base ring.
    pub fn triangular_parts(&self) -> Option<(usize, &FiniteRing)> {
        match &self.inner.kind {
            RingKind::Triangular { n, base } => Some((*n, base)),
            _ => None,
        }
    }

    /// Canonical literal for an element (quotients render their canonical
    /// representative, corners the underlying base element).
    pub fn literal_of(&self, index: u64) -> ElementLiteral {
        debug_assert!(index < self.order());
        match &self.inner.kind {
            RingKind::Zn { .. } => ElementLiteral::Int(index as i64),
            RingKind::Product { left, right } => {
                let ro = right.order();
                ElementLiteral::Tuple(
                    Box::new(left.literal_of(index / ro)),
                    Box::new(right.literal_of(index % ro)),
                )
            }
            RingKind::Matrix { n, base } => {
                let digits = decode_digits(index, base.order(), n * n);
                let rows = (0..*n)
                    .map(|i| (0..*n).map(|j| base.literal_of(digits[i * n + j])).collect())
                    .collect();
                ElementLiteral::Matrix(rows)
            }
            RingKind::Triangular { n, base } => {
                let m = n * (n + 1) / 2;
                let digits = decode_digits(index, base.order(), m);
                let rows = (0..*n)
                    .map(|i| {
                        (0..*n)
                            .map(|j| {
                                if i <= j {
                                    base.literal_of(digits[tri_pos(i, j, *n)])
                                } else {
                                    base.literal_of(base.zero_idx())
                                }
                            })
                            .collect()
                    })
                    .collect();
                ElementLiteral::Matrix(rows)
            }
            RingKind::Quotient { base, reps, .. } => base.literal_of(reps[index as usize]),
            RingKind::Corner { base, members, .. } => base.literal_of(members[index as usize]),
        }
    }

    pub fn render_element(&self, index: u64) -> String {
        self.literal_of(index).to_string()
    }

    /// Encode a literal, reducing integer entries modulo the residue size.
    /// Any coset representative is accepted for quotient rings.
    pub fn encode_literal(&self, lit: &ElementLiteral) -> Result<u64> {
        match (&self.inner.kind, lit) {
            (RingKind::Zn { n }, ElementLiteral::Int(v)) => Ok(v.rem_euclid(*n as i64) as u64),
            (RingKind::Product { left, right }, ElementLiteral::Tuple(a, b)) => {
                Ok(left.encode_literal(a)? * right.order() + right.encode_literal(b)?)
            }
            (RingKind::Matrix { n, base }, ElementLiteral::Matrix(rows)) => {
                check_shape(rows, *n)?;
                let mut digits = Vec::with_capacity(n * n);
                for row in rows {
                    for e in row {
                        digits.push(base.encode_literal(e)?);
                    }
                }
                Ok(encode_digits(&digits, base.order()))
            }
            (RingKind::Triangular { n, base }, ElementLiteral::Matrix(rows)) => {
                check_shape(rows, *n)?;
                let mut digits = Vec::with_capacity(n * (n + 1) / 2);
                for (i, row) in rows.iter().enumerate() {
                    for (j, e) in row.iter().enumerate() {
                        let v = base.encode_literal(e)?;
                        if i > j {
                            if v != base.zero_idx() {
                                return Err(RingError::InvalidParameter(
                                    "below-diagonal entry must be zero".into(),
                                ));
                            }
                        } else {
                            digits.push(v);
                        }
                    }
                }
                Ok(encode_digits(&digits, base.order()))
            }
            (RingKind::Quotient { base, coset_of, .. }, l) => {
                let b = base.encode_literal(l)?;
                Ok(coset_of[b as usize])
            }
            (RingKind::Corner { base, members, .. }, l) => {
                let b = base.encode_literal(l)?;
                members
                    .binary_search(&b)
                    .map(|p| p as u64)
                    .map_err(|_| RingError::InvalidParameter("element not in corner ring".into()))
            }
            _ => Err(RingError::InvalidParameter(format!(
                "literal shape does not match ring {}",
                self.descriptor()
            ))),
        }
    }

    /// Ring axioms, exhaustively up to [`TABLE_LIMIT`], by fixed-seed sampling
    /// above it.
    pub fn verify_axioms(&self) -> Result<()> {
        let n = self.order();
        if n == 0 {
            return Err(RingError::Internal("empty carrier".into()));
        }
        if n > 1 && self.zero_idx() == self.one_idx() {
            return Err(RingError::AxiomViolation {
                law: "zero != one".into(),
                witness: format!("order {n}"),
            });
        }
        let single = |a: u64| -> Option<(String, String)> {
            if self.add_idx(self.zero_idx(), a) != a {
                return Some(("additive identity".into(), format!("a={a}")));
            }
            if self.add_idx(a, self.neg_idx(a)) != self.zero_idx() {
                return Some(("additive inverse".into(), format!("a={a}")));
            }
            if self.mul_idx(self.one_idx(), a) != a || self.mul_idx(a, self.one_idx()) != a {
                return Some(("multiplicative identity".into(), format!("a={a}")));
            }
            None
        };
        let triple = |a: u64, b: u64, c: u64| -> Option<(String, String)> {
            let w = || format!("a={a}, b={b}, c={c}");
            if self.add_idx(a, b) != self.add_idx(b, a) {
                return Some(("commutative addition".into(), w()));
            }
            if self.add_idx(self.add_idx(a, b), c) != self.add_idx(a, self.add_idx(b, c)) {
                return Some(("associative addition".into(), w()));
            }
            if self.mul_idx(self.mul_idx(a, b), c) != self.mul_idx(a, self.mul_idx(b, c)) {
                return Some(("associative multiplication".into(), w()));
            }
            if self.mul_idx(a, self.add_idx(b, c)) != self.add_idx(self.mul_idx(a, b), self.mul_idx(a, c)) {
                return Some(("left distributivity".into(), w()));
            }
            if self.mul_idx(self.add_idx(a, b), c) != self.add_idx(self.mul_idx(a, c), self.mul_idx(b, c)) {
                return Some(("right distributivity".into(), w()));
            }
            None
        };
        if n <= TABLE_LIMIT {
            for a in 0..n {
                if let Some((law, witness)) = single(a) {
                    return Err(RingError::AxiomViolation { law, witness });
                }
            }
            let bad = crate::exec::min_matching(n, |a| {
                (0..n).any(|b| (0..n).any(|c| triple(a, b, c).is_some()))
            });
            if let Some(a) = bad {
                for b in 0..n {
                    for c in 0..n {
                        if let Some((law, witness)) = triple(a, b, c) {
                            return Err(RingError::AxiomViolation { law, witness });
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(AXIOM_SAMPLE_SEED);
            let mut pick = || rng.next_u64() % n;
            for _ in 0..AXIOM_SAMPLES {
                let (a, b, c) = (pick(), pick(), pick());
                if let Some((law, witness)) = single(a).or_else(|| triple(a, b, c)) {
                    return Err(RingError::AxiomViolation { law, witness });
                }
            }
        }
        Ok(())
    }
}

fn check_shape(rows: &[Vec<ElementLiteral>], n: usize) -> Result<()> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(RingError::InvalidParameter(format!(
            "matrix literal must be {n}x{n}"
        )));
    }
    Ok(())
}

#[inline]
fn tri_pos(i: usize, j: usize, n: usize) -> usize {
    // Row-major position among on-or-above-diagonal entries: row r holds
    // n - r of them, so row i starts at i(2n - i + 1)/2.
    i * (2 * n - i + 1) / 2 + (j - i)
}

#[inline]
fn decode_digits(mut x: u64, base: u64, count: usize) -> Vec<u64> {
    let mut d = vec![0u64; count];
    for k in (0..count).rev() {
        d[k] = x % base;
        x /= base;
    }
    d
}

#[inline]
fn encode_digits(digits: &[u64], base: u64) -> u64 {
    digits.iter().fold(0u64, |acc, &d| acc * base + d)
}

impl RingInner {
    fn zero_raw(&self) -> u64 {
        match &self.kind {
            RingKind::Zn { .. } | RingKind::Matrix { .. } | RingKind::Triangular { .. } => 0,
            RingKind::Product { .. } => 0,
            RingKind::Quotient { coset_of, base, .. } => coset_of[base.zero_idx() as usize],
            RingKind::Corner { .. } => 0, // 0 = f*0*f is always the least member
        }
    }

    fn one_raw(&self) -> u64 {
        match &self.kind {
            RingKind::Zn { n } => 1 % n,
            RingKind::Product { left, right } => left.one_idx() * right.order() + right.one_idx(),
            RingKind::Matrix { n, base } => {
                let mut digits = vec![base.zero_idx(); n * n];
                for i in 0..*n {
                    digits[i * n + i] = base.one_idx();
                }
                encode_digits(&digits, base.order())
            }
            RingKind::Triangular { n, base } => {
                let mut digits = vec![base.zero_idx(); n * (n + 1) / 2];
                for i in 0..*n {
                    digits[tri_pos(i, i, *n)] = base.one_idx();
                }
                encode_digits(&digits, base.order())
            }
            RingKind::Quotient { coset_of, base, .. } => coset_of[base.one_idx() as usize],
            RingKind::Corner { idem, members, .. } => {
                members.binary_search(idem).expect("idempotent is a member") as u64
            }
        }
    }

    fn add_raw(&self, i: u64, j: u64) -> u64 {
        match &self.kind {
            RingKind::Zn { n } => (i + j) % n,
            RingKind::Product { left, right } => {
                let ro = right.order();
                left.add_idx(i / ro, j / ro) * ro + right.add_idx(i % ro, j % ro)
            }
            RingKind::Matrix { n, base } => {
                entrywise(i, j, base, n * n, |a, b| base.add_idx(a, b))
            }
            RingKind::Triangular { n, base } => {
                entrywise(i, j, base, n * (n + 1) / 2, |a, b| base.add_idx(a, b))
            }
            RingKind::Quotient { base, reps, coset_of, .. } => {
                coset_of[base.add_idx(reps[i as usize], reps[j as usize]) as usize]
            }
            RingKind::Corner { base, members, .. } => {
                let s = base.add_idx(members[i as usize], members[j as usize]);
                members.binary_search(&s).expect("corner closed under addition") as u64
            }
        }
    }

    fn mul_raw(&self, i: u64, j: u64) -> u64 {
        match &self.kind {
            RingKind::Zn { n } => (i * j) % n,
            RingKind::Product { left, right } => {
                let ro = right.order();
                left.mul_idx(i / ro, j / ro) * ro + right.mul_idx(i % ro, j % ro)
            }
            RingKind::Matrix { n, base } => {
                let n = *n;
                let a = decode_digits(i, base.order(), n * n);
                let b = decode_digits(j, base.order(), n * n);
                let mut c = vec![base.zero_idx(); n * n];
                for r in 0..n {
                    for s in 0..n {
                        let mut acc = base.zero_idx();
                        for k in 0..n {
                            acc = base.add_idx(acc, base.mul_idx(a[r * n + k], b[k * n + s]));
                        }
                        c[r * n + s] = acc;
                    }
                }
                encode_digits(&c, base.order())
            }
            RingKind::Triangular { n, base } => {
                let n = *n;
                let m = n * (n + 1) / 2;
                let a = decode_digits(i, base.order(), m);
                let b = decode_digits(j, base.order(), m);
                let mut c = vec![base.zero_idx(); m];
                for r in 0..n {
                    for s in r..n {
                        let mut acc = base.zero_idx();
                        for k in r..=s {
                            acc = base.add_idx(
                                acc,
                                base.mul_idx(a[tri_pos(r, k, n)], b[tri_pos(k, s, n)]),
                            );
                        }
                        c[tri_pos(r, s, n)] = acc;
                    }
                }
                encode_digits(&c, base.order())
            }
            RingKind::Quotient { base, reps, coset_of, .. } => {
                coset_of[base.mul_idx(reps[i as usize], reps[j as usize]) as usize]
            }
            RingKind::Corner { base, members, .. } => {
                let p = base.mul_idx(members[i as usize], members[j as usize]);
                members.binary_search(&p).expect("corner closed under multiplication") as u64
            }
        }
    }

    fn neg_raw(&self, i: u64) -> u64 {
        match &self.kind {
            RingKind::Zn { n } => (n - i) % n,
            RingKind::Product { left, right } => {
                let ro = right.order();
                left.neg_idx(i / ro) * ro + right.neg_idx(i % ro)
            }
            RingKind::Matrix { n, base } => mapwise(i, base, n * n, |a| base.neg_idx(a)),
            RingKind::Triangular { n, base } => {
                mapwise(i, base, n * (n + 1) / 2, |a| base.neg_idx(a))
            }
            RingKind::Quotient { base, reps, coset_of, .. } => {
                coset_of[base.neg_idx(reps[i as usize]) as usize]
            }
            RingKind::Corner { base, members, .. } => {
                let m = base.neg_idx(members[i as usize]);
                members.binary_search(&m).expect("corner closed under negation") as u64
            }
        }
    }
}

fn entrywise(i: u64, j: u64, base: &FiniteRing, count: usize, f: impl Fn(u64, u64) -> u64) -> u64 {
    let a = decode_digits(i, base.order(), count);
    let b = decode_digits(j, base.order(), count);
    let c: Vec<u64> = a.iter().zip(&b).map(|(&x, &y)| f(x, y)).collect();
    encode_digits(&c, base.order())
}

fn mapwise(i: u64, base: &FiniteRing, count: usize, f: impl Fn(u64) -> u64) -> u64 {
    let a = decode_digits(i, base.order(), count);
    let c: Vec<u64> = a.iter().map(|&x| f(x)).collect();
    encode_digits(&c, base.order())
}
