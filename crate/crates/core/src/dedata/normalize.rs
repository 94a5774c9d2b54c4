use crate::exactla::Scalar;
use crate::ncalg::NcPoly;

use super::{DEData, DataError, DeltaImage, SigmaImage};

/// The change of variables `y1 = μ·y1'`, `y2 = λ·y1' + y2'` applied by
/// [`DEData::normalize_parameters`].
#[derive(Clone, Debug, PartialEq)]
pub struct Normalization {
    pub mu: Scalar,
    pub lambda: Scalar,
    pub data: DEData,
}

impl DEData {
    /// Changes variables so that `(p12, p11)` becomes `(p, 0)` or `(1, 1)`.
    /// The original data is untouched; validators never call this.
    pub fn normalize_parameters(&self) -> Result<Normalization, DataError> {
        let f = self.field();
        let (p12, p11) = (self.p12().clone(), self.p11().clone());
        let one = f.one();
        let (mu, lambda) = if p11.is_zero() {
            (one.clone(), f.zero())
        } else if p12 != one {
            (one.clone(), &p11 / &(&one - &p12))
        } else {
            (p11.inv().expect("p11 != 0"), f.zero())
        };
        let mu_inv = mu.inv().expect("mu != 0");
        let new_p11 = &(&(&p12 * &lambda) + &(&p11 * &mu)) - &lambda;
        let [t1, t2, t0] = self.tau().clone();
        let tau = [
            &t1 + &t2.scale(&(&lambda * &mu_inv)),
            t2.scale(&mu_inv),
            t0.scale(&mu_inv),
        ];
        // σ' = M⁻¹ σ M and δ' = M⁻¹ δ with M = [[μ, 0], [λ, 1]]
        let m = [[mu.clone(), f.zero()], [lambda.clone(), one.clone()]];
        let m_inv = [
            [mu_inv.clone(), f.zero()],
            [-&(&lambda * &mu_inv), one.clone()],
        ];
        let conj = |s: &SigmaImage| -> SigmaImage {
            std::array::from_fn(|i| {
                std::array::from_fn(|j| {
                    let mut acc = NcPoly::zero();
                    for a in 0..2 {
                        for b in 0..2 {
                            acc.add_scaled(&s[a][b], &(&m_inv[i][a] * &m[b][j]));
                        }
                    }
                    acc
                })
            })
        };
        let shift = |d: &DeltaImage| -> DeltaImage {
            std::array::from_fn(|i| {
                let mut acc = NcPoly::zero();
                for a in 0..2 {
                    acc.add_scaled(&d[a], &m_inv[i][a]);
                }
                acc
            })
        };
        let data = DEData::new(
            self.base().clone(),
            p12,
            new_p11,
            self.sigma().iter().map(conj).collect(),
            self.delta().iter().map(shift).collect(),
            tau,
            self.dy(),
        )?;
        Ok(Normalization { mu, lambda, data })
    }
}
