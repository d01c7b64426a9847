//! The two δ-relations that index the 𝓕 and 𝓖 classes in characteristic 3.

use crate::error::{Error, Result};
use crate::field::{Elem, FieldSpec};

use super::{SpaceKind, SpaceLabel};

fn require_char3(f: &FieldSpec) -> Result<()> {
    if f.characteristic() != 3 {
        return Err(Error::WrongCharacteristic {
            expected: 3,
            got: f.characteristic(),
        });
    }
    Ok(())
}

/// j(K) = {x³ − x}, sorted by code.
pub fn j_image(f: &FieldSpec) -> Vec<Elem> {
    f.image_of(|x| f.j(x))
}

/// δ ≡ λ mod j(K).
pub fn f_equiv(f: &FieldSpec, delta: Elem, lambda: Elem) -> Result<bool> {
    require_char3(f)?;
    Ok(j_image(f).contains(&f.sub(delta, lambda)))
}

/// δ ≃₃ λ: δ = a³λ + b³ for some a ≠ 0 and b, by exhausting (a, b).
pub fn g_equiv(f: &FieldSpec, delta: Elem, lambda: Elem) -> Result<bool> {
    require_char3(f)?;
    Ok(f.nonzero_elements().any(|a| {
        let a3l = f.mul(f.pow(a, 3), lambda);
        f.elements().any(|b| f.add(a3l, f.pow(b, 3)) == delta)
    }))
}

/// Smallest-code element of δ + j(K).
pub fn f_representative(f: &FieldSpec, delta: Elem) -> Result<Elem> {
    require_char3(f)?;
    Ok(j_image(f)
        .into_iter()
        .map(|y| f.add(delta, y))
        .min()
        .expect("j(K) contains 0"))
}

/// The ≃₃ class of δ, sorted by code.
pub fn g_class(f: &FieldSpec, delta: Elem) -> Result<Vec<Elem>> {
    require_char3(f)?;
    let mut out: Vec<Elem> = f
        .nonzero_elements()
        .flat_map(|a| {
            let a3d = f.mul(f.pow(a, 3), delta);
            f.elements().map(move |b| f.add(a3d, f.pow(b, 3)))
        })
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}

/// Smallest-code element of the ≃₃ class of δ.
pub fn g_representative(f: &FieldSpec, delta: Elem) -> Result<Elem> {
    Ok(g_class(f, delta)?[0])
}

/// UT1, then one F per coset of j(K), then one G per ≃₃ class.
pub fn class_representatives(f: &FieldSpec) -> Result<Vec<SpaceLabel>> {
    require_char3(f)?;
    let mut out = vec![SpaceLabel::new(SpaceKind::UT1, f, 3, None)];
    let mut f_reps: Vec<Elem> = f.elements().map(|d| f_representative(f, d)).collect::<Result<_>>()?;
    f_reps.sort();
    f_reps.dedup();
    let mut g_reps: Vec<Elem> = f.elements().map(|d| g_representative(f, d)).collect::<Result<_>>()?;
    g_reps.sort();
    g_reps.dedup();
    out.extend(f_reps.into_iter().map(|d| SpaceLabel::new(SpaceKind::F, f, 3, Some(d))));
    out.extend(g_reps.into_iter().map(|d| SpaceLabel::new(SpaceKind::G, f, 3, Some(d))));
    Ok(out)
}
