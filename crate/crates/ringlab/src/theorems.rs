//! Closed-form criteria for 2x2 matrix and upper triangular rings over a
//! commutative local base, plus the integer 2x2 criterion. Every fast path
//! that answers "yes" constructs a concrete certificate and validates it
//! against the definitional checker before returning; a validation failure
//! in a case the criterion covers is reported as an internal error, never
//! silently downgraded.

use crate::error::{Result, RingError};
use crate::polarity::{validate_certificate, PolarityCertificate, PolarityClass, Sign};
use crate::ring::FiniteRing;
use crate::structure;

/// A 2x2 matrix with entries indexed in a base ring, row major.
#[derive(Clone, Debug)]
pub struct Mat2 {
    base: FiniteRing,
    pub e: [u64; 4],
}

impl Mat2 {
    pub fn new(base: &FiniteRing, e: [u64; 4]) -> Result<Mat2> {
        for &x in &e {
            if x >= base.order() {
                return Err(RingError::IndexOutOfRange { index: x, order: base.order() });
            }
        }
        Ok(Mat2 { base: base.clone(), e })
    }

    pub fn zero(base: &FiniteRing) -> Mat2 {
        let z = base.zero_idx();
        Mat2 { base: base.clone(), e: [z, z, z, z] }
    }

    pub fn identity(base: &FiniteRing) -> Mat2 {
        let (z, o) = (base.zero_idx(), base.one_idx());
        Mat2 { base: base.clone(), e: [o, z, z, o] }
    }

    pub fn diag(base: &FiniteRing, a: u64, d: u64) -> Result<Mat2> {
        let z = base.zero_idx();
        Mat2::new(base, [a, z, z, d])
    }

    pub fn trace(&self) -> u64 {
        self.base.add_idx(self.e[0], self.e[3])
    }

    pub fn det(&self) -> u64 {
        let b = &self.base;
        b.sub_idx(b.mul_idx(self.e[0], self.e[3]), b.mul_idx(self.e[1], self.e[2]))
    }

    pub fn is_upper_triangular(&self) -> bool {
        self.e[2] == self.base.zero_idx()
    }

    /// Decode an element of a 2x2 full matrix ring.
    pub fn from_m2_index(m2: &FiniteRing, idx: u64) -> Result<Mat2> {
        let (n, base) = m2
            .matrix_parts()
            .filter(|&(n, _)| n == 2)
            .ok_or_else(|| RingError::NotApplicable("not a 2x2 matrix ring".into()))?;
        debug_assert_eq!(n, 2);
        let o = base.order();
        let e3 = idx % o;
        let e2 = (idx / o) % o;
        let e1 = (idx / (o * o)) % o;
        let e0 = idx / (o * o * o);
        Mat2::new(base, [e0, e1, e2, e3])
    }

    pub fn to_m2_index(&self, m2: &FiniteRing) -> Result<u64> {
        let (_, base) = m2
            .matrix_parts()
            .filter(|&(n, _)| n == 2)
            .ok_or_else(|| RingError::NotApplicable("not a 2x2 matrix ring".into()))?;
        if base.order() != self.base.order() {
            return Err(RingError::RingMismatch);
        }
        let o = base.order();
        Ok(((self.e[0] * o + self.e[1]) * o + self.e[2]) * o + self.e[3])
    }

    /// Decode an element of a 2x2 upper triangular ring.
    pub fn from_t2_index(t2: &FiniteRing, idx: u64) -> Result<Mat2> {
        let (n, base) = t2
            .triangular_parts()
            .filter(|&(n, _)| n == 2)
            .ok_or_else(|| RingError::NotApplicable("not a 2x2 upper triangular ring".into()))?;
        debug_assert_eq!(n, 2);
        let o = base.order();
        let e3 = idx % o;
        let e1 = (idx / o) % o;
        let e0 = idx / (o * o);
        Mat2::new(base, [e0, e1, base.zero_idx(), e3])
    }

    pub fn to_t2_index(&self, t2: &FiniteRing) -> Result<u64> {
        let (_, base) = t2
            .triangular_parts()
            .filter(|&(n, _)| n == 2)
            .ok_or_else(|| RingError::NotApplicable("not a 2x2 upper triangular ring".into()))?;
        if base.order() != self.base.order() {
            return Err(RingError::RingMismatch);
        }
        if !self.is_upper_triangular() {
            return Err(RingError::InvalidParameter("matrix has a below-diagonal entry".into()));
        }
        let o = base.order();
        Ok((self.e[0] * o + self.e[1]) * o + self.e[3])
    }
}

/// Outcome of a closed-form criterion on one element. `verdict` is present
/// exactly when the criterion applies; a true verdict from a certificate
/// producing criterion carries the validated certificate.
#[derive(Clone, Debug)]
pub struct FastPathVerdict {
    pub applicable: bool,
    pub verdict: Option<bool>,
    pub case: &'static str,
    pub certificate: Option<PolarityCertificate>,
}

impl FastPathVerdict {
    fn out_of_scope(case: &'static str) -> FastPathVerdict {
        FastPathVerdict { applicable: false, verdict: None, case, certificate: None }
    }

    fn no(case: &'static str) -> FastPathVerdict {
        FastPathVerdict { applicable: true, verdict: Some(false), case, certificate: None }
    }

    fn yes(case: &'static str, certificate: Option<PolarityCertificate>) -> FastPathVerdict {
        FastPathVerdict { applicable: true, verdict: Some(true), case, certificate }
    }
}

fn require_commutative_local(base: &FiniteRing) -> Result<()> {
    if !structure::commutative(base).holds {
        return Err(RingError::NotApplicable("base ring is not commutative".into()));
    }
    if !structure::local(base)?.holds {
        return Err(RingError::NotApplicable("base ring is not local".into()));
    }
    Ok(())
}

fn t2_parts(t2: &FiniteRing) -> Result<(&FiniteRing,)> {
    let (n, base) = t2
        .triangular_parts()
        .ok_or_else(|| RingError::NotApplicable("not an upper triangular ring".into()))?;
    if n != 2 {
        return Err(RingError::NotApplicable("triangular side must be 2".into()));
    }
    require_commutative_local(base)?;
    Ok((base,))
}

fn m2_parts(m2: &FiniteRing) -> Result<(&FiniteRing,)> {
    let (n, base) = m2
        .matrix_parts()
        .ok_or_else(|| RingError::NotApplicable("not a full matrix ring".into()))?;
    if n != 2 {
        return Err(RingError::NotApplicable("matrix side must be 2".into()));
    }
    require_commutative_local(base)?;
    Ok((base,))
}

/// All idempotents of a 2x2 upper triangular ring over a commutative local
/// base: zero, identity, and the two one-parameter families with a single
/// diagonal one. Returned as sorted element indices.
pub fn t2_idempotent_forms(t2: &FiniteRing) -> Result<Vec<u64>> {
    let (base,) = t2_parts(t2)?;
    let (z, o) = (base.zero_idx(), base.one_idx());
    let mut out = vec![
        Mat2::zero(base).to_t2_index(t2)?,
        Mat2::identity(base).to_t2_index(t2)?,
    ];
    for x in 0..base.order() {
        out.push(Mat2::new(base, [o, x, z, z])?.to_t2_index(t2)?);
        out.push(Mat2::new(base, [z, x, z, o])?.to_t2_index(t2)?);
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// All idempotents of a 2x2 full matrix ring over a commutative local base:
/// zero, identity, and [a b; c 1-a] with bc = a - a^2. Sorted indices.
pub fn m2_idempotent_forms(m2: &FiniteRing) -> Result<Vec<u64>> {
    let (base,) = m2_parts(m2)?;
    let one = base.one_idx();
    let mut out = vec![
        Mat2::zero(base).to_m2_index(m2)?,
        Mat2::identity(base).to_m2_index(m2)?,
    ];
    for a in 0..base.order() {
        let target = base.sub_idx(a, base.mul_idx(a, a));
        let d = base.sub_idx(one, a);
        for b in 0..base.order() {
            for c in 0..base.order() {
                if base.mul_idx(b, c) == target {
                    out.push(Mat2::new(base, [a, b, c, d])?.to_m2_index(m2)?);
                }
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

fn build_weak_cert(
    ring: &FiniteRing,
    a_idx: u64,
    p_idx: u64,
    sign: Sign,
) -> Result<PolarityCertificate> {
    let w = match sign {
        Sign::Plus => ring.add_idx(a_idx, p_idx),
        Sign::Minus => ring.sub_idx(a_idx, p_idx),
    };
    let both = structure::in_radical(ring, ring.add_idx(a_idx, p_idx))?
        && structure::in_radical(ring, ring.sub_idx(a_idx, p_idx))?;
    Ok(PolarityCertificate {
        class: PolarityClass::WeaklyJQuasipolar,
        element: a_idx,
        idempotent: p_idx,
        sign: Some(sign),
        witness: w,
        both_signs: both,
        count: None,
    })
}

fn certified_yes(
    ring: &FiniteRing,
    a_idx: u64,
    p_idx: u64,
    sign: Sign,
    case: &'static str,
) -> Result<FastPathVerdict> {
    let cert = build_weak_cert(ring, a_idx, p_idx, sign)?;
    validate_certificate(ring, &cert).map_err(|e| {
        RingError::Internal(format!("{case}: constructed certificate failed validation: {e}"))
    })?;
    Ok(FastPathVerdict::yes(case, Some(cert)))
}

/// Weak decomposition test for one element of a 2x2 upper triangular ring
/// over a commutative local base, split on which diagonal entries are units.
/// The mixed cases build the coupling entry from the explicit inverse and
/// validate the resulting certificate.
pub fn t2_fast_classify(t2: &FiniteRing, a_idx: u64) -> Result<FastPathVerdict> {
    let (base,) = t2_parts(t2)?;
    if a_idx >= t2.order() {
        return Err(RingError::IndexOutOfRange { index: a_idx, order: t2.order() });
    }
    let m = Mat2::from_t2_index(t2, a_idx)?;
    let (a1, a2, a3) = (m.e[0], m.e[1], m.e[3]);
    let one = base.one_idx();
    let j1 = structure::in_radical(base, a1)?;
    let j3 = structure::in_radical(base, a3)?;
    // In a local base every element is a unit or lies in the radical.
    match (j1, j3) {
        (true, true) => {
            // The whole matrix is in the radical; the zero idempotent works.
            certified_yes(t2, a_idx, t2.zero_idx(), Sign::Plus, "radical-diagonal")
        }
        (false, false) => {
            let p = Mat2::identity(base).to_t2_index(t2)?;
            for sign in [Sign::Plus, Sign::Minus] {
                let shift = |x: u64| match sign {
                    Sign::Plus => base.add_idx(x, one),
                    Sign::Minus => base.sub_idx(x, one),
                };
                if structure::in_radical(base, shift(a1))? && structure::in_radical(base, shift(a3))? {
                    return certified_yes(t2, a_idx, p, sign, "unit-diagonal");
                }
            }
            Ok(FastPathVerdict::no("unit-diagonal-no-shift"))
        }
        (true, false) => {
            // Unit in the lower-right slot: candidate P = [0 x; 0 1].
            let plus_ok = structure::in_radical(base, base.add_idx(a3, one))?;
            let minus_ok = structure::in_radical(base, base.sub_idx(a3, one))?;
            if !plus_ok && !minus_ok {
                return Ok(FastPathVerdict::no("mixed-no-shift"));
            }
            let inv = structure::inverse_of(base, base.sub_idx(a3, a1)).map_err(|_| {
                RingError::Internal("difference of a unit and a radical entry is not a unit".into())
            })?;
            let x1 = base.mul_idx(inv, a2);
            let x2 = base.neg_idx(x1);
            for sign in [Sign::Plus, Sign::Minus] {
                let feasible = match sign {
                    Sign::Plus => plus_ok,
                    Sign::Minus => minus_ok,
                };
                if !feasible {
                    continue;
                }
                for x in [x1, x2] {
                    let p = Mat2::new(base, [base.zero_idx(), x, base.zero_idx(), one])?
                        .to_t2_index(t2)?;
                    let cert = build_weak_cert(t2, a_idx, p, sign)?;
                    if validate_certificate(t2, &cert).is_ok() {
                        return Ok(FastPathVerdict::yes("mixed-lower-unit", Some(cert)));
                    }
                }
            }
            Err(RingError::Internal(
                "mixed-lower-unit: no coupling entry produced a valid certificate".into(),
            ))
        }
        (false, true) => {
            // Unit in the upper-left slot: candidate P = [1 x; 0 0].
            let plus_ok = structure::in_radical(base, base.add_idx(a1, one))?;
            let minus_ok = structure::in_radical(base, base.sub_idx(a1, one))?;
            if !plus_ok && !minus_ok {
                return Ok(FastPathVerdict::no("mixed-no-shift"));
            }
            let inv = structure::inverse_of(base, base.sub_idx(a1, a3)).map_err(|_| {
                RingError::Internal("difference of a unit and a radical entry is not a unit".into())
            })?;
            let x1 = base.mul_idx(inv, a2);
            let x2 = base.neg_idx(x1);
            for sign in [Sign::Plus, Sign::Minus] {
                let feasible = match sign {
                    Sign::Plus => plus_ok,
                    Sign::Minus => minus_ok,
                };
                if !feasible {
                    continue;
                }
                for x in [x1, x2] {
                    let p = Mat2::new(base, [one, x, base.zero_idx(), base.zero_idx()])?
                        .to_t2_index(t2)?;
                    let cert = build_weak_cert(t2, a_idx, p, sign)?;
                    if validate_certificate(t2, &cert).is_ok() {
                        return Ok(FastPathVerdict::yes("mixed-upper-unit", Some(cert)));
                    }
                }
            }
            Err(RingError::Internal(
                "mixed-upper-unit: no coupling entry produced a valid certificate".into(),
            ))
        }
    }
}

/// A unit of a 2x2 matrix ring has a weak decomposition exactly when one of
/// A + I or A - I lies in the radical, with the identity as idempotent.
pub fn m2_unit_criterion(m2: &FiniteRing, a_idx: u64) -> Result<FastPathVerdict> {
    let (_n, _base) = m2
        .matrix_parts()
        .filter(|&(n, _)| n == 2)
        .ok_or_else(|| RingError::NotApplicable("not a 2x2 matrix ring".into()))?;
    if a_idx >= m2.order() {
        return Err(RingError::IndexOutOfRange { index: a_idx, order: m2.order() });
    }
    if !structure::is_unit(m2, a_idx) {
        return Ok(FastPathVerdict::out_of_scope("not-a-unit"));
    }
    let p = m2.one_idx();
    if structure::in_radical(m2, m2.add_idx(a_idx, p))? {
        return certified_yes(m2, a_idx, p, Sign::Plus, "unit-shift");
    }
    if structure::in_radical(m2, m2.sub_idx(a_idx, p))? {
        return certified_yes(m2, a_idx, p, Sign::Minus, "unit-shift");
    }
    Ok(FastPathVerdict::no("unit-no-shift"))
}

/// Weak decomposition test for diag(j, u) with j in the radical and u a unit
/// of a commutative local base. Only 0, I, e11, e22 can serve as the
/// idempotent, which yields a seven-case ladder; cases are tried in order
/// and the first hit wins.
pub fn m2_diagonal_classify(m2: &FiniteRing, j_idx: u64, u_idx: u64) -> Result<FastPathVerdict> {
    let (base,) = m2_parts(m2)?;
    if j_idx >= base.order() || u_idx >= base.order() {
        return Err(RingError::IndexOutOfRange { index: j_idx.max(u_idx), order: base.order() });
    }
    if !structure::in_radical(base, j_idx)? || !structure::is_unit(base, u_idx) {
        return Ok(FastPathVerdict::out_of_scope("wrong-entry-classes"));
    }
    let one = base.one_idx();
    let (z, o) = (base.zero_idx(), one);
    let a_idx = Mat2::diag(base, j_idx, u_idx)?.to_m2_index(m2)?;
    let e11 = Mat2::diag(base, o, z)?.to_m2_index(m2)?;
    let e22 = Mat2::diag(base, z, o)?.to_m2_index(m2)?;
    let in_j = |x: u64| structure::in_radical(base, x);

    if structure::in_radical(m2, a_idx)? {
        return certified_yes(m2, a_idx, m2.zero_idx(), Sign::Plus, "diag-1");
    }
    if structure::in_radical(m2, m2.add_idx(a_idx, m2.one_idx()))? {
        return certified_yes(m2, a_idx, m2.one_idx(), Sign::Plus, "diag-2");
    }
    if structure::in_radical(m2, m2.sub_idx(a_idx, m2.one_idx()))? {
        return certified_yes(m2, a_idx, m2.one_idx(), Sign::Minus, "diag-3");
    }
    if in_j(base.add_idx(u_idx, one))? && in_j(j_idx)? {
        return certified_yes(m2, a_idx, e22, Sign::Plus, "diag-4");
    }
    if in_j(u_idx)? && in_j(base.add_idx(j_idx, one))? {
        return certified_yes(m2, a_idx, e11, Sign::Plus, "diag-5");
    }
    if in_j(u_idx)? && in_j(base.sub_idx(j_idx, one))? {
        return certified_yes(m2, a_idx, e11, Sign::Minus, "diag-6");
    }
    if in_j(base.sub_idx(u_idx, one))? && in_j(j_idx)? {
        return certified_yes(m2, a_idx, e22, Sign::Minus, "diag-7");
    }
    Ok(FastPathVerdict::no("diag-none"))
}

/// Obstruction: over a commutative base with 6 in the radical, a matrix
/// outside the radical with both trace and determinant in the base radical
/// has no weak decomposition.
pub fn m2_trace_det_obstruction(m2: &FiniteRing, a_idx: u64) -> Result<FastPathVerdict> {
    let (_, base) = m2
        .matrix_parts()
        .filter(|&(n, _)| n == 2)
        .ok_or_else(|| RingError::NotApplicable("not a 2x2 matrix ring".into()))?;
    if !structure::commutative(base).holds {
        return Err(RingError::NotApplicable("base ring is not commutative".into()));
    }
    if a_idx >= m2.order() {
        return Err(RingError::IndexOutOfRange { index: a_idx, order: m2.order() });
    }
    if !structure::in_radical(base, base.scalar(6))? {
        return Ok(FastPathVerdict::out_of_scope("six-not-in-radical"));
    }
    let m = Mat2::from_m2_index(m2, a_idx)?;
    let applicable = structure::in_radical(base, m.trace())?
        && structure::in_radical(base, m.det())?
        && !structure::in_radical(m2, a_idx)?;
    if applicable {
        Ok(FastPathVerdict::no("trace-det"))
    } else {
        Ok(FastPathVerdict::out_of_scope("no-obstruction"))
    }
}

/// Full characterization over a commutative local base with 6 in the
/// radical: A has a weak decomposition iff A or A +/- I lies in the radical,
/// or the characteristic polynomial splits with one root in the radical and
/// the other within the radical of +/- 1.
pub fn m2_quadratic_classify(m2: &FiniteRing, a_idx: u64) -> Result<FastPathVerdict> {
    let (base,) = m2_parts(m2)?;
    if a_idx >= m2.order() {
        return Err(RingError::IndexOutOfRange { index: a_idx, order: m2.order() });
    }
    if !structure::in_radical(base, base.scalar(6))? {
        return Ok(FastPathVerdict::out_of_scope("six-not-in-radical"));
    }
    if structure::in_radical(m2, a_idx)? {
        return certified_yes(m2, a_idx, m2.zero_idx(), Sign::Plus, "scalar-0");
    }
    if structure::in_radical(m2, m2.add_idx(a_idx, m2.one_idx()))? {
        return certified_yes(m2, a_idx, m2.one_idx(), Sign::Plus, "scalar-shift");
    }
    if structure::in_radical(m2, m2.sub_idx(a_idx, m2.one_idx()))? {
        return certified_yes(m2, a_idx, m2.one_idx(), Sign::Minus, "scalar-shift");
    }
    let m = Mat2::from_m2_index(m2, a_idx)?;
    let (tr, det) = (m.trace(), m.det());
    let one = base.one_idx();
    for &r1 in structure::jacobson_radical(base)? {
        let r2 = base.sub_idx(tr, r1);
        if base.mul_idx(r1, r2) != det {
            continue;
        }
        if structure::in_radical(base, base.sub_idx(r2, one))?
            || structure::in_radical(base, base.add_idx(r2, one))?
        {
            return Ok(FastPathVerdict::yes("vieta-roots", None));
        }
    }
    Ok(FastPathVerdict::no("no-split"))
}

/// Gate shared by several matrix criteria: 6 = 1+1+1+1+1+1 in the radical.
pub fn six_in_j_gate(r: &FiniteRing) -> Result<bool> {
    structure::in_radical(r, r.scalar(6))
}

const INT_ENTRY_BOUND: i64 = i32::MAX as i64;

/// Weak decomposition over the full 2x2 integer matrix ring, where the
/// radical vanishes: A decomposes iff A or -A is idempotent. Entries are
/// bounded and all arithmetic is overflow-checked.
pub fn integer_m2_classify(a: [[i64; 2]; 2]) -> Result<bool> {
    for row in &a {
        for &x in row {
            if x.abs() > INT_ENTRY_BOUND {
                return Err(RingError::InvalidParameter(format!(
                    "entry {x} out of the permitted range"
                )));
            }
        }
    }
    let mul = |x: i64, y: i64| x.checked_mul(y).ok_or(RingError::ArithmeticOverflow);
    let add = |x: i64, y: i64| x.checked_add(y).ok_or(RingError::ArithmeticOverflow);
    let mut sq = [[0i64; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            sq[i][j] = add(mul(a[i][0], a[0][j])?, mul(a[i][1], a[1][j])?)?;
        }
    }
    let neg = [[-a[0][0], -a[0][1]], [-a[1][0], -a[1][1]]];
    Ok(sq == a || sq == neg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polarity::weakly_jqp_element;
    use crate::ring::{
        make_matrix_ring, make_triangular_ring, make_zn, ElementLiteral, FiniteRing,
        DEFAULT_CONSTRUCTION_CAP as CAP,
    };

    fn zn(n: u64) -> FiniteRing {
        make_zn(n, CAP).unwrap()
    }

    fn enc(r: &FiniteRing, rows: [[i64; 2]; 2]) -> u64 {
        let lit = ElementLiteral::Matrix(
            rows.iter()
                .map(|row| row.iter().map(|&v| ElementLiteral::Int(v)).collect())
                .collect(),
        );
        r.encode_literal(&lit).unwrap()
    }

    #[test]
    fn idempotent_forms_match_brute_force() {
        for n in [2u64, 3, 4] {
            let base = zn(n);
            let t2 = make_triangular_ring(&base, 2, CAP).unwrap();
            let forms = t2_idempotent_forms(&t2).unwrap();
            assert_eq!(forms.len() as u64, 2 + 2 * n, "T2(Z{n}) count");
            assert_eq!(forms, crate::structure::idempotents(&t2), "T2(Z{n})");
            let m2 = make_matrix_ring(&base, 2, CAP).unwrap();
            let forms = m2_idempotent_forms(&m2).unwrap();
            assert_eq!(forms, crate::structure::idempotents(&m2), "M2(Z{n})");
        }
        let m2z2 = make_matrix_ring(&zn(2), 2, CAP).unwrap();
        assert_eq!(m2_idempotent_forms(&m2z2).unwrap().len(), 8);
        let m2z4 = make_matrix_ring(&zn(4), 2, CAP).unwrap();
        assert_eq!(m2_idempotent_forms(&m2z4).unwrap().len(), 26);
    }

    #[test]
    fn forms_require_a_commutative_local_base() {
        let t2z6 = make_triangular_ring(&zn(6), 2, CAP).unwrap();
        assert!(matches!(
            t2_idempotent_forms(&t2z6),
            Err(RingError::NotApplicable(_))
        ));
        let z6 = zn(6);
        assert!(matches!(t2_idempotent_forms(&z6), Err(RingError::NotApplicable(_))));
    }

    #[test]
    fn triangular_fast_path_frozen_case() {
        let base = zn(4);
        let t2 = make_triangular_ring(&base, 2, CAP).unwrap();
        // Unit upper-left entry, radical lower-right entry.
        let a = enc(&t2, [[1, 1], [0, 2]]);
        let v = t2_fast_classify(&t2, a).unwrap();
        assert!(v.applicable);
        assert_eq!(v.verdict, Some(true));
        assert_eq!(v.case, "mixed-upper-unit");
        let cert = v.certificate.unwrap();
        // Coupling entry x = (a1 - a3)^{-1} a2 = (-1)^{-1} * 1 = 3.
        assert_eq!(cert.idempotent, enc(&t2, [[1, 3], [0, 0]]));
        // Both shifted diagonals land in the radical here, and the + sign
        // is preferred.
        assert_eq!(cert.sign, Some(crate::polarity::Sign::Plus));
        assert!(cert.both_signs);
        assert_eq!(cert.witness, enc(&t2, [[2, 0], [0, 2]]));
    }

    #[test]
    fn triangular_fast_path_matches_brute_force() {
        for n in [2u64, 3, 4] {
            let t2 = make_triangular_ring(&zn(n), 2, CAP).unwrap();
            for a in 0..t2.order() {
                let fast = t2_fast_classify(&t2, a).unwrap();
                let brute = weakly_jqp_element(&t2, a).unwrap().is_some();
                assert_eq!(fast.verdict, Some(brute), "T2(Z{n}), a={a}");
            }
        }
    }

    #[test]
    fn least_non_weak_element_of_t2_over_z3() {
        let t2 = make_triangular_ring(&zn(3), 2, CAP).unwrap();
        let first = (0..t2.order())
            .find(|&a| t2_fast_classify(&t2, a).unwrap().verdict == Some(false))
            .unwrap();
        assert_eq!(first, enc(&t2, [[1, 0], [0, 2]]));
        assert_eq!(first, 11);
    }

    #[test]
    fn unit_criterion_on_m2_over_z2() {
        let m2 = make_matrix_ring(&zn(2), 2, CAP).unwrap();
        for a in 0..m2.order() {
            let v = m2_unit_criterion(&m2, a).unwrap();
            if !crate::structure::is_unit(&m2, a) {
                assert!(!v.applicable);
                continue;
            }
            let brute = weakly_jqp_element(&m2, a).unwrap().is_some();
            assert_eq!(v.verdict, Some(brute), "a={a}");
            // Only the identity itself decomposes among the units here.
            assert_eq!(brute, a == m2.one_idx());
        }
    }

    #[test]
    fn diagonal_ladder_frozen_case() {
        let m2 = make_matrix_ring(&zn(4), 2, CAP).unwrap();
        let v = m2_diagonal_classify(&m2, 2, 1).unwrap();
        assert_eq!(v.verdict, Some(true));
        assert_eq!(v.case, "diag-4");
        let cert = v.certificate.unwrap();
        assert_eq!(cert.idempotent, enc(&m2, [[0, 0], [0, 1]]));
        assert_eq!(cert.sign, Some(crate::polarity::Sign::Plus));
        assert!(cert.both_signs);
        // diag(0, 1): 1 + 1 = 2 lands in the radical, e22 shift again.
        let v = m2_diagonal_classify(&m2, 0, 1).unwrap();
        assert_eq!(v.verdict, Some(true));
        assert_eq!(v.case, "diag-4");
        // diag(0, 3): 3 = -1 + 4, so the e22 shift with + sign applies.
        let v = m2_diagonal_classify(&m2, 0, 3).unwrap();
        assert_eq!(v.verdict, Some(true));
        assert_eq!(v.case, "diag-4");
        // Entries in the wrong classes are out of scope.
        assert!(!m2_diagonal_classify(&m2, 1, 1).unwrap().applicable);
        assert!(!m2_diagonal_classify(&m2, 2, 2).unwrap().applicable);
    }

    #[test]
    fn diagonal_ladder_matches_brute_force() {
        for n in [2u64, 3, 4] {
            let base = zn(n);
            let m2 = make_matrix_ring(&base, 2, CAP).unwrap();
            for j in crate::structure::jacobson_radical(&base).unwrap() {
                for &u in crate::structure::units(&base) {
                    let v = m2_diagonal_classify(&m2, *j, u).unwrap();
                    let a = Mat2::diag(&base, *j, u).unwrap().to_m2_index(&m2).unwrap();
                    let brute = weakly_jqp_element(&m2, a).unwrap().is_some();
                    assert_eq!(v.verdict, Some(brute), "M2(Z{n}), diag({j},{u})");
                }
            }
        }
    }

    #[test]
    fn trace_det_obstruction_blocks_nilpotents() {
        let m2 = make_matrix_ring(&zn(2), 2, CAP).unwrap();
        let e12 = enc(&m2, [[0, 1], [0, 0]]);
        let v = m2_trace_det_obstruction(&m2, e12).unwrap();
        assert!(v.applicable);
        assert_eq!(v.verdict, Some(false));
        assert!(weakly_jqp_element(&m2, e12).unwrap().is_none());
        // The identity has unit determinant: no obstruction.
        assert!(!m2_trace_det_obstruction(&m2, m2.one_idx()).unwrap().applicable);
        // Over Z5 the gate 6 in J fails, so nothing is applicable.
        let m2z5 = make_matrix_ring(&zn(5), 2, CAP).unwrap();
        let v = m2_trace_det_obstruction(&m2z5, enc(&m2z5, [[0, 1], [0, 0]])).unwrap();
        assert!(!v.applicable);
        assert_eq!(v.case, "six-not-in-radical");
    }

    #[test]
    fn quadratic_criterion_matches_brute_force() {
        for n in [2u64, 3] {
            let m2 = make_matrix_ring(&zn(n), 2, CAP).unwrap();
            for a in 0..m2.order() {
                let v = m2_quadratic_classify(&m2, a).unwrap();
                let brute = weakly_jqp_element(&m2, a).unwrap().is_some();
                assert_eq!(v.verdict, Some(brute), "M2(Z{n}), a={a}");
                if let Some(c) = v.certificate {
                    assert_eq!(c.element, a);
                }
            }
        }
    }

    #[test]
    fn quadratic_criterion_rejects_a_unit_shear() {
        let m2 = make_matrix_ring(&zn(2), 2, CAP).unwrap();
        let shear = enc(&m2, [[1, 1], [0, 1]]);
        let v = m2_quadratic_classify(&m2, shear).unwrap();
        assert_eq!(v.verdict, Some(false));
        assert_eq!(v.case, "no-split");
    }

    #[test]
    fn obstruction_agrees_with_the_quadratic_criterion() {
        let m2 = make_matrix_ring(&zn(3), 2, CAP).unwrap();
        for a in 0..m2.order() {
            let ob = m2_trace_det_obstruction(&m2, a).unwrap();
            if ob.applicable {
                let q = m2_quadratic_classify(&m2, a).unwrap();
                assert_eq!(q.verdict, Some(false), "a={a}");
            }
        }
    }

    #[test]
    fn six_gate_spot_values() {
        assert!(six_in_j_gate(&zn(6)).unwrap());
        assert!(six_in_j_gate(&zn(9)).unwrap());
        assert!(six_in_j_gate(&zn(12)).unwrap());
        assert!(!six_in_j_gate(&zn(5)).unwrap());
        assert!(!six_in_j_gate(&zn(10)).unwrap());
    }

    #[test]
    fn integer_matrices_decompose_iff_plus_minus_idempotent() {
        assert!(integer_m2_classify([[1, 0], [0, 0]]).unwrap());
        assert!(integer_m2_classify([[0, 0], [0, 0]]).unwrap());
        assert!(integer_m2_classify([[-1, 0], [0, -1]]).unwrap());
        // -P for the projection P = [[1,0],[1,0]].
        assert!(integer_m2_classify([[-1, 0], [-1, 0]]).unwrap());
        assert!(!integer_m2_classify([[0, 1], [0, 0]]).unwrap());
        assert!(!integer_m2_classify([[2, 3], [1, 1]]).unwrap());
        assert!(!integer_m2_classify([[1, 1], [0, 1]]).unwrap());
    }

    #[test]
    fn integer_bounds_and_overflow() {
        let big = i32::MAX as i64;
        assert!(matches!(
            integer_m2_classify([[big + 1, 0], [0, 0]]),
            Err(RingError::InvalidParameter(_))
        ));
        assert!(matches!(
            integer_m2_classify([[-big - 1, 0], [0, 0]]),
            Err(RingError::InvalidParameter(_))
        ));
        // Worst case inside the bound: 2*(2^31-1)^2 still fits in i64, so
        // the checked arithmetic returns a verdict instead of erroring.
        assert!(!integer_m2_classify([[big, big], [big, big]]).unwrap());
        assert!(!integer_m2_classify([[big, 0], [0, 0]]).unwrap());
        assert!(!integer_m2_classify([[-big, -big], [-big, -big]]).unwrap());
    }

    #[test]
    fn mat2_round_trips() {
        let m2 = make_matrix_ring(&zn(3), 2, CAP).unwrap();
        for idx in 0..m2.order() {
            let m = Mat2::from_m2_index(&m2, idx).unwrap();
            assert_eq!(m.to_m2_index(&m2).unwrap(), idx);
        }
        let t2 = make_triangular_ring(&zn(3), 2, CAP).unwrap();
        for idx in 0..t2.order() {
            let m = Mat2::from_t2_index(&t2, idx).unwrap();
            assert_eq!(m.to_t2_index(&t2).unwrap(), idx);
            assert!(m.is_upper_triangular());
        }
        let z9 = zn(9);
        assert!(matches!(
            Mat2::from_m2_index(&z9, 0),
            Err(RingError::NotApplicable(_))
        ));
    }
}
