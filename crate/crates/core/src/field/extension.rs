use super::{Elem, FieldCtx};
use crate::error::{Error, Result};

/// F_{q^m} built as F_{p^{nm}}, with a field embedding F_q -> F_{q^m}.
///
/// For `n > 1` the embedding sends the basis element `t` of F_q to the
/// smallest root (by canonical integer) of the defining modulus of F_q inside
/// the larger field; F_p is fixed pointwise.
#[derive(Clone, Debug)]
pub struct Extension {
    base: FieldCtx,
    field: FieldCtx,
    degree: u32,
    image: Vec<Elem>,
}

impl Extension {
    pub(super) fn new(base: &FieldCtx, m: u32) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidModulus(
                "extension degree must be at least 1".into(),
            ));
        }
        if m == 1 {
            return Ok(Extension {
                base: base.clone(),
                field: base.clone(),
                degree: 1,
                image: base.elements().collect(),
            });
        }
        let requested = (base.q() as u128).saturating_pow(m);
        if requested > base.size_cap() as u128 {
            return Err(Error::SizeLimit {
                requested,
                cap: base.size_cap(),
            });
        }
        let total = base
            .n()
            .checked_mul(m)
            .ok_or(Error::Overflow("extension degree"))?;
        let field = FieldCtx::with_cap(base.p() as u64, total, None, base.size_cap())?;
        let image = match base.modulus() {
            None => base.elements().map(|a| Elem(a.value())).collect(),
            Some(modulus) => {
                let coeffs: Vec<Elem> = modulus.iter().map(|&c| Elem(c)).collect();
                let root = field
                    .elements()
                    .find(|&x| field.eval_poly(&coeffs, x).is_zero())
                    .ok_or_else(|| {
                        Error::InvariantViolation("modulus has no root in extension".into())
                    })?;
                let powers: Vec<Elem> = (0..base.n() as u64).map(|i| field.pow(root, i)).collect();
                base.elements()
                    .map(|a| {
                        base.digits(a)
                            .iter()
                            .zip(&powers)
                            .fold(Elem::ZERO, |acc, (&d, &pw)| {
                                field.add(acc, field.mul(Elem(d), pw))
                            })
                    })
                    .collect()
            }
        };
        Ok(Extension {
            base: base.clone(),
            field,
            degree: m,
            image,
        })
    }

    pub fn base(&self) -> &FieldCtx {
        &self.base
    }

    pub fn field(&self) -> &FieldCtx {
        &self.field
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn embed(&self, a: Elem) -> Elem {
        self.image[a.value() as usize]
    }
}
