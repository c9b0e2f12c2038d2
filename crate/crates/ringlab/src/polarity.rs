//! Element-level polarity certificates and the whole-ring classifier.
//!
//! An element a admits a weak decomposition when some idempotent p in the
//! double commutant of a satisfies a + p or a - p in the radical; the strict
//! form allows only a + p. Certificate searches scan idempotents in ascending
//! index order and, for each idempotent, try the + sign before the - sign,
//! so the reported certificate is deterministic.

use std::time::Instant;

use crate::error::{Result, RingError};
use crate::exec;
use crate::report::{PropertyEntry, PropertyReport};
use crate::ring::{make_quotient, Caps, FiniteRing};
use crate::structure;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn label(self) -> &'static str {
        match self {
            Sign::Plus => "+1",
            Sign::Minus => "-1",
        }
    }

    /// a + p under Plus, a - p under Minus.
    fn apply(self, r: &FiniteRing, a: u64, p: u64) -> u64 {
        match self {
            Sign::Plus => r.add_idx(a, p),
            Sign::Minus => r.sub_idx(a, p),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolarityClass {
    WeaklyJQuasipolar,
    JQuasipolar,
    Quasipolar,
    Clean,
    StronglyClean,
    StronglyJClean,
    UniquelyClean,
}

impl PolarityClass {
    pub const ALL: [PolarityClass; 7] = [
        PolarityClass::WeaklyJQuasipolar,
        PolarityClass::JQuasipolar,
        PolarityClass::Quasipolar,
        PolarityClass::Clean,
        PolarityClass::StronglyClean,
        PolarityClass::StronglyJClean,
        PolarityClass::UniquelyClean,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PolarityClass::WeaklyJQuasipolar => "weakly_j_quasipolar",
            PolarityClass::JQuasipolar => "j_quasipolar",
            PolarityClass::Quasipolar => "quasipolar",
            PolarityClass::Clean => "clean",
            PolarityClass::StronglyClean => "strongly_clean",
            PolarityClass::StronglyJClean => "strongly_j_clean",
            PolarityClass::UniquelyClean => "uniquely_clean",
        }
    }
}

/// A checkable decomposition of one element. `witness` is the companion
/// element: a +/- p for the polar classes, a - e for the clean family.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PolarityCertificate {
    pub class: PolarityClass,
    pub element: u64,
    pub idempotent: u64,
    pub sign: Option<Sign>,
    pub witness: u64,
    /// For the weak classes: this idempotent works with either sign.
    pub both_signs: bool,
    /// For the uniquely clean class: total number of clean decompositions.
    pub count: Option<u64>,
}

fn weak_cert(
    class: PolarityClass,
    a: u64,
    p: u64,
    sign: Sign,
    witness: u64,
    both: bool,
) -> PolarityCertificate {
    PolarityCertificate {
        class,
        element: a,
        idempotent: p,
        sign: Some(sign),
        witness,
        both_signs: both,
        count: None,
    }
}

fn plain_cert(class: PolarityClass, a: u64, e: u64, witness: u64) -> PolarityCertificate {
    PolarityCertificate {
        class,
        element: a,
        idempotent: e,
        sign: None,
        witness,
        both_signs: false,
        count: None,
    }
}

/// Least idempotent p in comm2(a) with a + p or a - p in the radical.
pub fn weakly_jqp_element(r: &FiniteRing, a: u64) -> Result<Option<PolarityCertificate>> {
    let rad = structure::jacobson_radical(r)?;
    let in_j = |x: u64| rad.binary_search(&x).is_ok();
    let ca = structure::commutant(r, a);
    for &p in structure::idempotents(r) {
        let s = r.add_idx(a, p);
        let d = r.sub_idx(a, p);
        let s_in = in_j(s);
        let d_in = in_j(d);
        if (s_in || d_in) && structure::in_double_commutant(r, &ca, p) {
            let (sign, w) = if s_in { (Sign::Plus, s) } else { (Sign::Minus, d) };
            return Ok(Some(weak_cert(
                PolarityClass::WeaklyJQuasipolar,
                a,
                p,
                sign,
                w,
                s_in && d_in,
            )));
        }
    }
    Ok(None)
}

/// Least idempotent p in comm2(a) with a + p in the radical.
pub fn jqp_element(r: &FiniteRing, a: u64) -> Result<Option<PolarityCertificate>> {
    let rad = structure::jacobson_radical(r)?;
    let in_j = |x: u64| rad.binary_search(&x).is_ok();
    let ca = structure::commutant(r, a);
    for &p in structure::idempotents(r) {
        let s = r.add_idx(a, p);
        if in_j(s) && structure::in_double_commutant(r, &ca, p) {
            let both = in_j(r.sub_idx(a, p));
            return Ok(Some(weak_cert(PolarityClass::JQuasipolar, a, p, Sign::Plus, s, both)));
        }
    }
    Ok(None)
}

/// Least idempotent p in comm2(a) with a + p a unit and ap quasi-nilpotent.
/// When present this p is unique, so scan order does not matter.
pub fn quasipolar_element(r: &FiniteRing, a: u64) -> Option<PolarityCertificate> {
    let ca = structure::commutant(r, a);
    for &p in structure::idempotents(r) {
        let s = r.add_idx(a, p);
        if structure::is_unit(r, s)
            && structure::in_qnil(r, r.mul_idx(a, p))
            && structure::in_double_commutant(r, &ca, p)
        {
            return Some(plain_cert(PolarityClass::Quasipolar, a, p, s));
        }
    }
    None
}

/// Least idempotent e with a - e a unit.
pub fn clean_element(r: &FiniteRing, a: u64) -> Option<PolarityCertificate> {
    for &e in structure::idempotents(r) {
        let d = r.sub_idx(a, e);
        if structure::is_unit(r, d) {
            return Some(plain_cert(PolarityClass::Clean, a, e, d));
        }
    }
    None
}

/// Least idempotent e with a - e a unit and ae = ea.
pub fn strongly_clean_element(r: &FiniteRing, a: u64) -> Option<PolarityCertificate> {
    for &e in structure::idempotents(r) {
        let d = r.sub_idx(a, e);
        if structure::is_unit(r, d) && r.mul_idx(a, e) == r.mul_idx(e, a) {
            return Some(plain_cert(PolarityClass::StronglyClean, a, e, d));
        }
    }
    None
}

/// Least idempotent e with a - e in the radical and ae = ea.
pub fn strongly_j_clean_element(r: &FiniteRing, a: u64) -> Result<Option<PolarityCertificate>> {
    let rad = structure::jacobson_radical(r)?;
    for &e in structure::idempotents(r) {
        let d = r.sub_idx(a, e);
        if rad.binary_search(&d).is_ok() && r.mul_idx(a, e) == r.mul_idx(e, a) {
            return Ok(Some(plain_cert(PolarityClass::StronglyJClean, a, e, d)));
        }
    }
    Ok(None)
}

/// Number of clean decompositions of a, plus a certificate when there is
/// exactly one.
pub fn uniquely_clean_count(r: &FiniteRing, a: u64) -> (u64, Option<PolarityCertificate>) {
    let mut count = 0;
    let mut only = None;
    for &e in structure::idempotents(r) {
        let d = r.sub_idx(a, e);
        if structure::is_unit(r, d) {
            count += 1;
            only = Some((e, d));
        }
    }
    let cert = (count == 1).then(|| {
        let (e, d) = only.expect("count == 1 records a decomposition");
        PolarityCertificate {
            class: PolarityClass::UniquelyClean,
            element: a,
            idempotent: e,
            sign: None,
            witness: d,
            both_signs: false,
            count: Some(1),
        }
    });
    (count, cert)
}

/// Number of idempotents in comm2(a) with a + p or a - p in the radical.
/// This count never exceeds one.
pub fn spectral_count(r: &FiniteRing, a: u64) -> Result<u64> {
    let rad = structure::jacobson_radical(r)?;
    let in_j = |x: u64| rad.binary_search(&x).is_ok();
    let ca = structure::commutant(r, a);
    let mut count = 0;
    for &p in structure::idempotents(r) {
        if (in_j(r.add_idx(a, p)) || in_j(r.sub_idx(a, p)))
            && structure::in_double_commutant(r, &ca, p)
        {
            count += 1;
        }
    }
    Ok(count)
}

/// Re-derive every claim a certificate makes from the definitions; reject
/// with [`RingError::InvalidCertificate`] on the first mismatch.
pub fn validate_certificate(r: &FiniteRing, cert: &PolarityCertificate) -> Result<()> {
    let fail = |msg: &str| Err(RingError::InvalidCertificate(msg.to_string()));
    let (a, p) = (cert.element, cert.idempotent);
    if a >= r.order() || p >= r.order() || cert.witness >= r.order() {
        return fail("index out of range");
    }
    if r.mul_idx(p, p) != p {
        return fail("companion is not idempotent");
    }
    let in_j = |x: u64| -> Result<bool> { structure::in_radical(r, x) };
    match cert.class {
        PolarityClass::WeaklyJQuasipolar | PolarityClass::JQuasipolar => {
            let sign = match cert.sign {
                Some(s) => s,
                None => return fail("weak decomposition without a sign"),
            };
            if cert.class == PolarityClass::JQuasipolar && sign != Sign::Plus {
                return fail("strict decomposition must use the + sign");
            }
            let ca = structure::commutant(r, a);
            if !structure::in_double_commutant(r, &ca, p) {
                return fail("idempotent not in the double commutant");
            }
            let w = sign.apply(r, a, p);
            if !in_j(w)? {
                return fail("companion sum not in the radical");
            }
            if w != cert.witness {
                return fail("recorded witness mismatch");
            }
            let both = in_j(r.add_idx(a, p))? && in_j(r.sub_idx(a, p))?;
            if both != cert.both_signs {
                return fail("both_signs flag mismatch");
            }
            if cert.count.is_some() {
                return fail("unexpected count");
            }
        }
        PolarityClass::Quasipolar => {
            if cert.sign.is_some() || cert.both_signs || cert.count.is_some() {
                return fail("stray fields on a spectral certificate");
            }
            let ca = structure::commutant(r, a);
            if !structure::in_double_commutant(r, &ca, p) {
                return fail("idempotent not in the double commutant");
            }
            let s = r.add_idx(a, p);
            if !structure::is_unit(r, s) {
                return fail("a + p is not a unit");
            }
            if !structure::in_qnil(r, r.mul_idx(a, p)) {
                return fail("ap is not quasi-nilpotent");
            }
            if s != cert.witness {
                return fail("recorded witness mismatch");
            }
        }
        PolarityClass::Clean | PolarityClass::StronglyClean | PolarityClass::UniquelyClean => {
            if cert.sign.is_some() || cert.both_signs {
                return fail("stray fields on a clean certificate");
            }
            let d = r.sub_idx(a, p);
            if !structure::is_unit(r, d) {
                return fail("a - e is not a unit");
            }
            if d != cert.witness {
                return fail("recorded witness mismatch");
            }
            if cert.class == PolarityClass::StronglyClean {
                if r.mul_idx(a, p) != r.mul_idx(p, a) {
                    return fail("idempotent does not commute with the element");
                }
                if cert.count.is_some() {
                    return fail("unexpected count");
                }
            } else if cert.class == PolarityClass::UniquelyClean {
                let (n, _) = uniquely_clean_count(r, a);
                if n != 1 || cert.count != Some(1) {
                    return fail("decomposition is not unique");
                }
            } else if cert.count.is_some() {
                return fail("unexpected count");
            }
        }
        PolarityClass::StronglyJClean => {
            if cert.sign.is_some() || cert.both_signs || cert.count.is_some() {
                return fail("stray fields on a clean certificate");
            }
            let d = r.sub_idx(a, p);
            if !in_j(d)? {
                return fail("a - e is not in the radical");
            }
            if r.mul_idx(a, p) != r.mul_idx(p, a) {
                return fail("idempotent does not commute with the element");
            }
            if d != cert.witness {
                return fail("recorded witness mismatch");
            }
        }
    }
    Ok(())
}

/// Transport a certificate along conjugation by the unit u. The input is
/// validated first; the output is validated before it is returned.
pub fn conjugate_certificate(
    r: &FiniteRing,
    cert: &PolarityCertificate,
    u: u64,
) -> Result<PolarityCertificate> {
    validate_certificate(r, cert)?;
    let ui = structure::inverse_of(r, u)?;
    let conj = |x: u64| r.mul_idx(r.mul_idx(ui, x), u);
    let moved = PolarityCertificate {
        class: cert.class,
        element: conj(cert.element),
        idempotent: conj(cert.idempotent),
        sign: cert.sign,
        witness: conj(cert.witness),
        both_signs: cert.both_signs,
        count: cert.count,
    };
    validate_certificate(r, &moved).map_err(|e| {
        RingError::Internal(format!("conjugation broke a valid certificate: {e}"))
    })?;
    Ok(moved)
}

/// Certificates for one element across all seven classes, in class order.
pub fn element_certificates(
    r: &FiniteRing,
    a: u64,
) -> Result<Vec<(PolarityClass, Option<PolarityCertificate>)>> {
    Ok(vec![
        (PolarityClass::WeaklyJQuasipolar, weakly_jqp_element(r, a)?),
        (PolarityClass::JQuasipolar, jqp_element(r, a)?),
        (PolarityClass::Quasipolar, quasipolar_element(r, a)),
        (PolarityClass::Clean, clean_element(r, a)),
        (PolarityClass::StronglyClean, strongly_clean_element(r, a)),
        (PolarityClass::StronglyJClean, strongly_j_clean_element(r, a)?),
        (PolarityClass::UniquelyClean, uniquely_clean_count(r, a).1),
    ])
}

/// Per-element facts gathered in one sweep over the idempotents.
#[derive(Clone, Copy, Default)]
struct Facts {
    weakly: bool,
    jqp: bool,
    quasi: bool,
    clean: bool,
    sclean: bool,
    sjclean: bool,
    clean_count: u64,
}

fn facts_of(r: &FiniteRing, a: u64) -> Result<Facts> {
    let rad = structure::jacobson_radical(r)?;
    let in_j = |x: u64| rad.binary_search(&x).is_ok();
    let ca = structure::commutant(r, a);
    let mut f = Facts::default();
    for &p in structure::idempotents(r) {
        let s = r.add_idx(a, p);
        let d = r.sub_idx(a, p);
        let commute = r.mul_idx(a, p) == r.mul_idx(p, a);
        let d_unit = structure::is_unit(r, d);
        if d_unit {
            f.clean = true;
            f.clean_count += 1;
            if commute {
                f.sclean = true;
            }
        }
        if commute && in_j(d) {
            f.sjclean = true;
        }
        let s_in = in_j(s);
        let d_in = in_j(d);
        let s_unit = structure::is_unit(r, s);
        if (s_in || d_in || s_unit) && structure::in_double_commutant(r, &ca, p) {
            if s_in || d_in {
                f.weakly = true;
            }
            if s_in {
                f.jqp = true;
            }
            if s_unit && structure::in_qnil(r, r.mul_idx(a, p)) {
                f.quasi = true;
            }
        }
    }
    Ok(f)
}

fn sweep_entry(
    r: &FiniteRing,
    name: &str,
    facts: &[Facts],
    pick: impl Fn(&Facts) -> bool,
) -> PropertyEntry {
    match facts.iter().position(|f| !pick(f)) {
        None => PropertyEntry::holds(name),
        Some(a) => PropertyEntry::fails(name, r.render_element(a as u64)),
    }
}

fn verdict_entry(r: &FiniteRing, name: &str, v: &structure::Verdict) -> PropertyEntry {
    if v.holds {
        PropertyEntry::holds(name)
    } else {
        let w = v.witness.iter().map(|&i| r.render_element(i)).collect::<Vec<_>>().join(" & ");
        PropertyEntry::fails(name, w)
    }
}

/// Classify a whole ring: decide all seventeen report properties, exactly.
pub fn classify_ring(r: &FiniteRing, caps: &Caps) -> Result<PropertyReport> {
    let t0 = Instant::now();
    if r.order() > caps.classify {
        return Err(RingError::CapExceeded { required: r.order(), allowed: caps.classify });
    }
    // Fill the shared caches before fanning out, so workers only read.
    let rad = structure::jacobson_radical(r)?.to_vec();
    structure::idempotents(r);
    structure::units(r);
    structure::qnil(r);

    let facts = {
        let out = exec::map_range(r.order(), |a| facts_of(r, a));
        let mut v = Vec::with_capacity(out.len());
        for f in out {
            v.push(f?);
        }
        v
    };

    let mut props = Vec::with_capacity(17);
    props.push(sweep_entry(r, "weakly_j_quasipolar", &facts, |f| f.weakly));
    props.push(sweep_entry(r, "j_quasipolar", &facts, |f| f.jqp));
    props.push(sweep_entry(r, "quasipolar", &facts, |f| f.quasi));
    props.push(sweep_entry(r, "clean", &facts, |f| f.clean));
    props.push(sweep_entry(r, "strongly_clean", &facts, |f| f.sclean));
    props.push(sweep_entry(r, "strongly_j_clean", &facts, |f| f.sjclean));
    props.push(match facts.iter().position(|f| f.clean_count != 1) {
        None => PropertyEntry::holds("uniquely_clean"),
        Some(a) => {
            let mut e = PropertyEntry::fails("uniquely_clean", r.render_element(a as u64));
            e.count = Some(facts[a].clean_count);
            e
        }
    });

    // Properties of R/J, decided on the quotient ring itself.
    let q = make_quotient(r, &rad, true)?;
    props.push(verdict_entry(&q, "feckly_reduced", &structure::reduced(&q)));
    props.push(verdict_entry(&q, "rj_commutative", &structure::commutative(&q)));
    let cubed = (0..q.order()).find(|&x| q.mul_idx(q.mul_idx(x, x), x) != x);
    props.push(match cubed {
        None => PropertyEntry::holds("rj_cubed_identity"),
        Some(x) => PropertyEntry::fails("rj_cubed_identity", q.render_element(x)),
    });

    let sharp = structure::j_sharp(r)?;
    props.push(match sharp.iter().find(|&&x| rad.binary_search(&x).is_err()) {
        None => PropertyEntry::holds("j_equals_j_sharp"),
        Some(&x) => PropertyEntry::fails("j_equals_j_sharp", r.render_element(x)),
    });

    let sp = structure::structural_predicates(r)?;
    props.push(verdict_entry(r, "directly_finite", &sp.directly_finite));
    props.push(verdict_entry(r, "commutative", &sp.commutative));
    props.push(verdict_entry(r, "abelian", &sp.abelian));
    props.push(verdict_entry(r, "reduced", &sp.reduced));
    props.push(verdict_entry(r, "boolean", &sp.boolean));
    props.push(verdict_entry(r, "local", &sp.local));

    Ok(PropertyReport {
        ring: r.descriptor(),
        order: r.order(),
        properties: props,
        elapsed_ms: t0.elapsed().as_millis() as u64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
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
    fn weak_certificate_in_z6() {
        let r = zn(6);
        let c = weakly_jqp_element(&r, 2).unwrap().unwrap();
        assert_eq!(c.idempotent, 4);
        assert_eq!(c.sign, Some(Sign::Plus));
        assert_eq!(c.witness, 0);
        assert!(!c.both_signs);
        validate_certificate(&r, &c).unwrap();
        // 1 decomposes only with the - sign: 1 - 1 = 0.
        let c1 = weakly_jqp_element(&r, 1).unwrap().unwrap();
        assert_eq!((c1.idempotent, c1.sign), (1, Some(Sign::Minus)));
        // ... so the strict search fails there.
        assert!(jqp_element(&r, 1).unwrap().is_none());
    }

    #[test]
    fn both_signs_in_z4() {
        let r = zn(4);
        // J(Z4) = {0, 2}: 3 + 1 = 0 and 3 - 1 = 2 both land in it.
        let c = weakly_jqp_element(&r, 3).unwrap().unwrap();
        assert_eq!((c.idempotent, c.sign), (1, Some(Sign::Plus)));
        assert!(c.both_signs);
        let c1 = jqp_element(&r, 1).unwrap().unwrap();
        assert_eq!(c1.idempotent, 1);
        assert_eq!(c1.witness, 2);
        assert!(c1.both_signs);
    }

    #[test]
    fn no_weak_decomposition_in_z15() {
        let r = zn(15);
        assert!(weakly_jqp_element(&r, 2).unwrap().is_none());
        assert_eq!(spectral_count(&r, 2).unwrap(), 0);
    }

    #[test]
    fn spectral_certificates() {
        let r = zn(5);
        let c = quasipolar_element(&r, 3).unwrap();
        assert_eq!(c.idempotent, 0);
        assert_eq!(c.witness, 3);
        validate_certificate(&r, &c).unwrap();

        let m = make_matrix_ring(&zn(2), 2, CAP).unwrap();
        let e12 = enc(&m, [[0, 1], [0, 0]]);
        let c = quasipolar_element(&m, e12).unwrap();
        assert_eq!(c.idempotent, m.one_idx());
        validate_certificate(&m, &c).unwrap();
        // No weak decomposition for a nilpotent non-radical matrix.
        assert!(weakly_jqp_element(&m, e12).unwrap().is_none());
    }

    #[test]
    fn spectral_idempotent_complements_the_weak_one() {
        for n in [4u64, 6, 9, 12] {
            let r = zn(n);
            for a in 0..n {
                if let Some(w) = weakly_jqp_element(&r, a).unwrap() {
                    let q = quasipolar_element(&r, a).expect("weak implies spectral");
                    assert_eq!(q.idempotent, r.sub_idx(r.one_idx(), w.idempotent), "Z{n}, a={a}");
                }
            }
        }
    }

    #[test]
    fn clean_family_in_z3() {
        let r = zn(3);
        let c = clean_element(&r, 2).unwrap();
        assert_eq!((c.idempotent, c.witness), (0, 2));
        assert!(strongly_clean_element(&r, 2).is_some());
        // 2 - 0 = 2 and 2 - 1 = 1 both avoid the zero radical.
        assert!(strongly_j_clean_element(&r, 2).unwrap().is_none());
        assert!(strongly_j_clean_element(&r, 1).unwrap().is_some());
    }

    #[test]
    fn clean_decomposition_counts() {
        let r = zn(6);
        // 2 = 1 + 1 = 3 + 5: two decompositions, so not uniquely clean.
        let (n, cert) = uniquely_clean_count(&r, 2);
        assert_eq!(n, 2);
        assert!(cert.is_none());
        let z4 = zn(4);
        for a in 0..4u64 {
            let (n, cert) = uniquely_clean_count(&z4, a);
            assert_eq!(n, 1, "Z4, a={a}");
            validate_certificate(&z4, &cert.unwrap()).unwrap();
        }
    }

    #[test]
    fn unit_elements_use_the_identity_idempotent() {
        for n in [2u64, 4, 6, 9, 12] {
            let r = zn(n);
            for &u in structure::units(&r) {
                if let Some(c) = weakly_jqp_element(&r, u).unwrap() {
                    assert_eq!(c.idempotent, r.one_idx(), "Z{n}, u={u}");
                }
            }
        }
    }

    #[test]
    fn spectral_count_never_exceeds_one() {
        for n in 2..=16u64 {
            let r = zn(n);
            for a in 0..n {
                let c = spectral_count(&r, a).unwrap();
                assert!(c <= 1, "Z{n}, a={a}: {c}");
                let present = weakly_jqp_element(&r, a).unwrap().is_some();
                assert_eq!(c == 1, present);
            }
        }
    }

    #[test]
    fn tampered_certificates_are_rejected() {
        let r = zn(6);
        let good = weakly_jqp_element(&r, 2).unwrap().unwrap();
        for bad in [
            PolarityCertificate { idempotent: 3, ..good },
            PolarityCertificate { witness: 1, ..good },
            PolarityCertificate { sign: Some(Sign::Minus), witness: r.sub_idx(2, 4), ..good },
            PolarityCertificate { both_signs: true, ..good },
            PolarityCertificate { idempotent: 2, ..good },
            PolarityCertificate { sign: None, ..good },
        ] {
            assert!(matches!(
                validate_certificate(&r, &bad),
                Err(RingError::InvalidCertificate(_))
            ));
        }
        let strict = PolarityCertificate {
            class: PolarityClass::JQuasipolar,
            sign: Some(Sign::Minus),
            ..good
        };
        assert!(validate_certificate(&r, &strict).is_err());
    }

    #[test]
    fn conjugation_transports_certificates() {
        let t = make_triangular_ring(&zn(2), 2, CAP).unwrap();
        let e11 = enc(&t, [[1, 0], [0, 0]]);
        let u = enc(&t, [[1, 1], [0, 1]]);
        assert_eq!(e11, 4);
        let cert = weakly_jqp_element(&t, e11).unwrap().unwrap();
        assert_eq!(cert.idempotent, e11);
        let moved = conjugate_certificate(&t, &cert, u).unwrap();
        assert_eq!(moved.element, enc(&t, [[1, 1], [0, 0]]));
        assert_eq!(moved.element, 6);
        assert_eq!(moved.idempotent, moved.element);
        // Conjugating by a non-unit is refused.
        let e12 = enc(&t, [[0, 1], [0, 0]]);
        assert!(matches!(
            conjugate_certificate(&t, &cert, e12),
            Err(RingError::NotAUnit)
        ));
    }

    #[test]
    fn classify_z6_profile() {
        let rep = classify_ring(&zn(6), &Caps::default()).unwrap();
        let expect = [
            ("weakly_j_quasipolar", true),
            ("j_quasipolar", false),
            ("quasipolar", true),
            ("clean", true),
            ("strongly_clean", true),
            ("strongly_j_clean", false),
            ("uniquely_clean", false),
            ("feckly_reduced", true),
            ("rj_commutative", true),
            ("rj_cubed_identity", true),
            ("j_equals_j_sharp", true),
            ("directly_finite", true),
            ("commutative", true),
            ("abelian", true),
            ("reduced", true),
            ("boolean", false),
            ("local", false),
        ];
        for (name, v) in expect {
            assert_eq!(rep.verdict(name), v, "{name}");
        }
        assert_eq!(rep.entry("j_quasipolar").unwrap().witness.as_deref(), Some("1"));
        assert_eq!(rep.entry("strongly_j_clean").unwrap().witness.as_deref(), Some("2"));
        let uc = rep.entry("uniquely_clean").unwrap();
        assert_eq!(uc.witness.as_deref(), Some("2"));
        assert_eq!(uc.count, Some(2));
        assert!(rep.implication_violations().is_empty());
    }

    #[test]
    fn classify_z4_and_z9_are_strict() {
        for n in [4u64, 9] {
            let rep = classify_ring(&zn(n), &Caps::default()).unwrap();
            assert!(rep.verdict("weakly_j_quasipolar"), "Z{n}");
            assert!(rep.verdict("local"), "Z{n}");
            assert!(rep.implication_violations().is_empty());
        }
        // 2 lands in J(Z4) but not in J(Z9), and only the former is strict.
        assert!(classify_ring(&zn(4), &Caps::default()).unwrap().verdict("j_quasipolar"));
        let z9 = classify_ring(&zn(9), &Caps::default()).unwrap();
        assert!(!z9.verdict("j_quasipolar"));
        assert_eq!(z9.entry("j_quasipolar").unwrap().witness.as_deref(), Some("1"));
    }

    #[test]
    fn classify_full_matrix_ring_over_z2() {
        let m = make_matrix_ring(&zn(2), 2, CAP).unwrap();
        let rep = classify_ring(&m, &Caps::default()).unwrap();
        assert!(!rep.verdict("weakly_j_quasipolar"));
        assert!(rep.verdict("quasipolar"));
        assert!(rep.verdict("strongly_clean"));
        assert!(!rep.verdict("commutative"));
        assert!(!rep.verdict("abelian"));
        assert!(rep.verdict("directly_finite"));
        assert!(rep.implication_violations().is_empty());
        // The least element with no weak decomposition is the first
        // nilpotent outside the radical.
        let w = rep.entry("weakly_j_quasipolar").unwrap().witness.as_deref().unwrap();
        assert_eq!(w, "[[0,0],[1,0]]");
    }

    #[test]
    fn classify_respects_the_cap() {
        let r = zn(10);
        let caps = Caps { construction: CAP, classify: 8 };
        assert!(matches!(
            classify_ring(&r, &caps),
            Err(RingError::CapExceeded { required: 10, allowed: 8 })
        ));
    }

    #[test]
    fn element_certificates_cover_all_classes() {
        let r = zn(6);
        let certs = element_certificates(&r, 2).unwrap();
        assert_eq!(certs.len(), 7);
        let names: Vec<&str> = certs.iter().map(|(c, _)| c.name()).collect();
        assert_eq!(
            names,
            vec![
                "weakly_j_quasipolar",
                "j_quasipolar",
                "quasipolar",
                "clean",
                "strongly_clean",
                "strongly_j_clean",
                "uniquely_clean"
            ]
        );
        // 2 = -4 with 4 idempotent and J(Z6) = {0}, so even the plus-sign
        // class holds; 2 itself is not idempotent, so the J-clean class fails.
        assert!(certs[0].1.is_some());
        assert!(certs[1].1.is_some());
        assert!(certs[5].1.is_none());
        assert!(certs[6].1.is_none());
        for (_, c) in certs.iter().flat_map(|(k, c)| c.map(|c| (k, c))) {
            validate_certificate(&r, &c).unwrap();
        }
    }
}
