//! Structural subsets of a finite ring (units, radical, idempotents, ...)
//! and ring-level structural predicates.
//!
//! Every subset is computed once per ring and cached; member lists are kept
//! sorted ascending by element index. Witnesses returned by predicates are
//! always the least index (or lexicographically least index pair) that
//! violates the property, so reruns and the parallel/sequential execution
//! lanes agree byte for byte.

use serde::Serialize;

use crate::error::{Result, RingError};
use crate::exec;
use crate::ring::{FiniteRing, SetData, UnitData};

/// Scan for a two-sided inverse of the element at `u`.
pub fn unit_inverse_of(r: &FiniteRing, u: u64) -> Option<u64> {
    let one = r.one_idx();
    (0..r.order()).find(|&v| r.mul_idx(u, v) == one && r.mul_idx(v, u) == one)
}

fn unit_data(r: &FiniteRing) -> &UnitData {
    r.caches().units.get_or_init(|| {
        let inverse = exec::map_range(r.order(), |u| unit_inverse_of(r, u));
        let is_unit: Vec<bool> = inverse.iter().map(|v| v.is_some()).collect();
        let members = (0..r.order()).filter(|&u| is_unit[u as usize]).collect();
        UnitData { members, is_unit, inverse }
    })
}

/// Elements with a two-sided inverse, ascending.
pub fn units(r: &FiniteRing) -> &[u64] {
    &unit_data(r).members
}

pub fn is_unit(r: &FiniteRing, x: u64) -> bool {
    unit_data(r).is_unit[x as usize]
}

/// The recorded inverse of `x`, or [`RingError::NotAUnit`].
pub fn inverse_of(r: &FiniteRing, x: u64) -> Result<u64> {
    unit_data(r).inverse[x as usize].ok_or(RingError::NotAUnit)
}

fn radical_data(r: &FiniteRing) -> Result<&SetData> {
    let cached = r.caches().radical.get_or_init(|| {
        let ud = unit_data(r);
        let one = r.one_idx();
        // x is quasi-regular when 1 - t*x is a unit for every t; over a
        // finite ring this set is exactly the Jacobson radical.
        let members: Vec<u64> = exec::map_range(r.order(), |x| {
            (0..r.order()).all(|t| ud.is_unit[r.sub_idx(one, r.mul_idx(t, x)) as usize])
        })
        .into_iter()
        .enumerate()
        .filter_map(|(x, keep)| keep.then_some(x as u64))
        .collect();
        let set = SetData::from_members(members, r.order());
        // Re-verify the ideal laws rather than trusting the derivation.
        for &a in &set.members {
            for &b in &set.members {
                if !set.contains[r.add_idx(a, b) as usize] {
                    return Err(format!("radical not additively closed at {a}, {b}"));
                }
            }
            for t in 0..r.order() {
                if !set.contains[r.mul_idx(t, a) as usize]
                    || !set.contains[r.mul_idx(a, t) as usize]
                {
                    return Err(format!("radical not absorbing at {a}, {t}"));
                }
            }
        }
        Ok(set)
    });
    match cached {
        Ok(set) => Ok(set),
        Err(msg) => Err(RingError::Internal(msg.clone())),
    }
}

/// The Jacobson radical, ascending.
pub fn jacobson_radical(r: &FiniteRing) -> Result<&[u64]> {
    Ok(&radical_data(r)?.members)
}

pub fn in_radical(r: &FiniteRing, x: u64) -> Result<bool> {
    Ok(radical_data(r)?.contains[x as usize])
}

fn j_sharp_data(r: &FiniteRing) -> Result<&SetData> {
    let rad = radical_data(r)?;
    Ok(r.caches().j_sharp.get_or_init(|| {
        let members: Vec<u64> = exec::map_range(r.order(), |x| {
            // The power sequence x, x^2, ... cycles within |R| steps.
            let mut y = x;
            for _ in 0..r.order() {
                if rad.contains[y as usize] {
                    return true;
                }
                y = r.mul_idx(y, x);
            }
            false
        })
        .into_iter()
        .enumerate()
        .filter_map(|(x, keep)| keep.then_some(x as u64))
        .collect();
        SetData::from_members(members, r.order())
    }))
}

/// Elements with some positive power in the radical, ascending.
pub fn j_sharp(r: &FiniteRing) -> Result<&[u64]> {
    Ok(&j_sharp_data(r)?.members)
}

pub fn in_j_sharp(r: &FiniteRing, x: u64) -> Result<bool> {
    Ok(j_sharp_data(r)?.contains[x as usize])
}

fn idempotent_data(r: &FiniteRing) -> &[u64] {
    r.caches().idempotents.get_or_init(|| {
        (0..r.order()).filter(|&e| r.mul_idx(e, e) == e).collect()
    })
}

/// Idempotents, ascending.
pub fn idempotents(r: &FiniteRing) -> &[u64] {
    idempotent_data(r)
}

pub fn is_idempotent(r: &FiniteRing, e: u64) -> bool {
    r.mul_idx(e, e) == e
}

fn qnil_data(r: &FiniteRing) -> &SetData {
    r.caches().qnil.get_or_init(|| {
        let ud = unit_data(r);
        let one = r.one_idx();
        let members: Vec<u64> = exec::map_range(r.order(), |a| {
            (0..r.order()).all(|x| {
                r.mul_idx(a, x) != r.mul_idx(x, a)
                    || ud.is_unit[r.add_idx(one, r.mul_idx(a, x)) as usize]
            })
        })
        .into_iter()
        .enumerate()
        .filter_map(|(a, keep)| keep.then_some(a as u64))
        .collect();
        SetData::from_members(members, r.order())
    })
}

/// Elements a with 1 + ax a unit for every x commuting with a, ascending.
pub fn qnil(r: &FiniteRing) -> &[u64] {
    &qnil_data(r).members
}

pub fn in_qnil(r: &FiniteRing, a: u64) -> bool {
    qnil_data(r).contains[a as usize]
}

fn center_data(r: &FiniteRing) -> &[u64] {
    r.caches().center.get_or_init(|| {
        exec::map_range(r.order(), |z| {
            (0..r.order()).all(|t| r.mul_idx(z, t) == r.mul_idx(t, z))
        })
        .into_iter()
        .enumerate()
        .filter_map(|(z, keep)| keep.then_some(z as u64))
        .collect()
    })
}

/// Center, ascending.
pub fn center(r: &FiniteRing) -> &[u64] {
    center_data(r)
}

/// Everything commuting with `a`, ascending.
pub fn commutant(r: &FiniteRing, a: u64) -> Vec<u64> {
    (0..r.order()).filter(|&x| r.mul_idx(a, x) == r.mul_idx(x, a)).collect()
}

/// Everything commuting with the whole commutant of `a`, ascending.
pub fn double_commutant(r: &FiniteRing, a: u64) -> Vec<u64> {
    let ca = commutant(r, a);
    ca.iter()
        .copied()
        .filter(|&p| ca.iter().all(|&c| r.mul_idx(p, c) == r.mul_idx(c, p)))
        .collect()
}

/// Membership in the double commutant, given a precomputed commutant.
pub fn in_double_commutant(r: &FiniteRing, comm_a: &[u64], p: u64) -> bool {
    comm_a.iter().all(|&c| r.mul_idx(p, c) == r.mul_idx(c, p))
}

/// Left annihilator of `a`, ascending.
pub fn left_annihilator(r: &FiniteRing, a: u64) -> Vec<u64> {
    let z = r.zero_idx();
    (0..r.order()).filter(|&x| r.mul_idx(x, a) == z).collect()
}

/// Right annihilator of `a`, ascending.
pub fn right_annihilator(r: &FiniteRing, a: u64) -> Vec<u64> {
    let z = r.zero_idx();
    (0..r.order()).filter(|&x| r.mul_idx(a, x) == z).collect()
}

/// One ring-level predicate outcome. `witness` holds the least violating
/// index tuple when the property fails, empty when it holds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub holds: bool,
    pub witness: Vec<u64>,
}

impl Verdict {
    fn holds() -> Verdict {
        Verdict { holds: true, witness: Vec::new() }
    }

    fn fails(witness: Vec<u64>) -> Verdict {
        Verdict { holds: false, witness }
    }
}

#[derive(Clone, Debug)]
pub struct StructuralReport {
    pub commutative: Verdict,
    pub abelian: Verdict,
    pub reduced: Verdict,
    pub boolean: Verdict,
    pub local: Verdict,
    pub directly_finite: Verdict,
}

fn min_pair(r: &FiniteRing, bad: impl Fn(u64, u64) -> bool + Sync) -> Option<(u64, u64)> {
    let a = exec::min_matching(r.order(), |a| (0..r.order()).any(|b| bad(a, b)))?;
    let b = (0..r.order()).find(|&b| bad(a, b)).expect("outer scan reported a match");
    Some((a, b))
}

/// Multiplication commutes everywhere.
pub fn commutative(r: &FiniteRing) -> Verdict {
    match min_pair(r, |a, b| r.mul_idx(a, b) != r.mul_idx(b, a)) {
        None => Verdict::holds(),
        Some((a, b)) => Verdict::fails(vec![a, b]),
    }
}

/// Every idempotent is central.
pub fn abelian(r: &FiniteRing) -> Verdict {
    for &e in idempotents(r) {
        if let Some(x) = (0..r.order()).find(|&x| r.mul_idx(e, x) != r.mul_idx(x, e)) {
            return Verdict::fails(vec![e, x]);
        }
    }
    Verdict::holds()
}

/// No nonzero square-zero elements.
pub fn reduced(r: &FiniteRing) -> Verdict {
    let z = r.zero_idx();
    match (0..r.order()).find(|&x| x != z && r.mul_idx(x, x) == z) {
        None => Verdict::holds(),
        Some(x) => Verdict::fails(vec![x]),
    }
}

/// Every element is idempotent.
pub fn boolean(r: &FiniteRing) -> Verdict {
    match (0..r.order()).find(|&x| r.mul_idx(x, x) != x) {
        None => Verdict::holds(),
        Some(x) => Verdict::fails(vec![x]),
    }
}

/// Every non-unit lies in the radical. Holds vacuously on the zero ring.
pub fn local(r: &FiniteRing) -> Result<Verdict> {
    let rad = radical_data(r)?;
    let ud = unit_data(r);
    let bad = (0..r.order()).find(|&x| !ud.is_unit[x as usize] && !rad.contains[x as usize]);
    Ok(match bad {
        None => Verdict::holds(),
        Some(x) => Verdict::fails(vec![x]),
    })
}

/// One-sided inverses are two-sided: ab = 1 forces ba = 1.
pub fn directly_finite(r: &FiniteRing) -> Verdict {
    let one = r.one_idx();
    match min_pair(r, |a, b| r.mul_idx(a, b) == one && r.mul_idx(b, a) != one) {
        None => Verdict::holds(),
        Some((a, b)) => Verdict::fails(vec![a, b]),
    }
}

pub fn structural_predicates(r: &FiniteRing) -> Result<StructuralReport> {
    Ok(StructuralReport {
        commutative: commutative(r),
        abelian: abelian(r),
        reduced: reduced(r),
        boolean: boolean(r),
        local: local(r)?,
        directly_finite: directly_finite(r),
    })
}

/// Named structural subsets available for reporting.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SetKind {
    Units,
    Radical,
    JSharp,
    Idempotents,
    Center,
    Qnil,
}

impl SetKind {
    pub const ALL: [SetKind; 6] = [
        SetKind::Units,
        SetKind::Radical,
        SetKind::JSharp,
        SetKind::Idempotents,
        SetKind::Center,
        SetKind::Qnil,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SetKind::Units => "units",
            SetKind::Radical => "radical",
            SetKind::JSharp => "j_sharp",
            SetKind::Idempotents => "idempotents",
            SetKind::Center => "center",
            SetKind::Qnil => "qnil",
        }
    }
}

/// A structural subset rendered for output: members as element literals.
#[derive(Clone, Debug, Serialize)]
pub struct StructuralSet {
    pub name: String,
    pub size: u64,
    pub members: Vec<String>,
}

pub fn structural_set(r: &FiniteRing, which: SetKind) -> Result<StructuralSet> {
    let members: &[u64] = match which {
        SetKind::Units => units(r),
        SetKind::Radical => jacobson_radical(r)?,
        SetKind::JSharp => j_sharp(r)?,
        SetKind::Idempotents => idempotents(r),
        SetKind::Center => center(r),
        SetKind::Qnil => qnil(r),
    };
    Ok(StructuralSet {
        name: which.name().to_string(),
        size: members.len() as u64,
        members: members.iter().map(|&i| r.render_element(i)).collect(),
    })
}

pub fn set_contains(r: &FiniteRing, which: SetKind, x: u64) -> Result<bool> {
    Ok(match which {
        SetKind::Units => is_unit(r, x),
        SetKind::Radical => in_radical(r, x)?,
        SetKind::JSharp => in_j_sharp(r, x)?,
        SetKind::Idempotents => is_idempotent(r, x),
        SetKind::Center => center(r).binary_search(&x).is_ok(),
        SetKind::Qnil => in_qnil(r, x),
    })
}
