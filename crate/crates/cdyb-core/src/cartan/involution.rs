//! Signed-monomial automorphisms: the Chevalley involution, torus elements
//! `Ad_y` and their composites `sigma_ybar = sigma o Ad_y`.

use alloc::format;
use alloc::vec::Vec;

use num_traits::Zero;

use super::lie::{Letter, LieAlgebra};
use crate::error::{Error, Result};
use crate::rational::{one, pow, Rat};

#[derive(Clone, Debug, PartialEq)]
pub enum MapKind {
    ChevalleySigma,
    SigmaYbar(Vec<Rat>),
    AdY(Vec<Rat>),
    Custom,
}

/// Automorphism sending each letter to a multiple of a letter.
#[derive(Clone, Debug, PartialEq)]
pub struct LetterMap {
    pub kind: MapKind,
    image: Vec<(Letter, Rat)>,
}

/// `c^mu = prod c_i^{m_i}`.
pub fn torus_character(c: &[Rat], mu: &[i64]) -> Rat {
    c.iter().zip(mu).fold(one(), |acc, (ci, &m)| acc * pow(ci, m))
}

fn check_scalars(lie: &LieAlgebra, c: &[Rat]) -> Result<()> {
    if c.len() != lie.rank() {
        return Err(Error::Config(format!("expected {} torus scalars, got {}", lie.rank(), c.len())));
    }
    if c.iter().any(|x| x.is_zero()) {
        return Err(Error::Config("torus scalars must be nonzero".into()));
    }
    Ok(())
}

impl LetterMap {
    pub fn identity(lie: &LieAlgebra) -> Self {
        LetterMap { kind: MapKind::AdY(alloc::vec![one(); lie.rank()]), image: (0..lie.dim()).map(|a| (a, one())).collect() }
    }

    /// `t -> -t`, `E_a -> -E_{-a}` on the Chevalley basis.
    pub fn sigma(lie: &LieAlgebra) -> Self {
        let image = (0..lie.dim())
            .map(|a| if lie.is_cartan(a) { (a, -one()) } else { (lie.opposite(a), -lie.chevalley_ratio(a)) })
            .collect();
        LetterMap { kind: MapKind::ChevalleySigma, image }
    }

    /// `Ad_y(e_a) = c^a e_a`.
    pub fn ad_y(lie: &LieAlgebra, c: &[Rat]) -> Result<Self> {
        check_scalars(lie, c)?;
        let image = (0..lie.dim()).map(|a| (a, torus_character(c, lie.weight(a)))).collect();
        Ok(LetterMap { kind: MapKind::AdY(c.to_vec()), image })
    }

    pub fn sigma_ybar(lie: &LieAlgebra, c: &[Rat]) -> Result<Self> {
        let mut m = Self::sigma(lie).compose(&Self::ad_y(lie, c)?);
        m.kind = MapKind::SigmaYbar(c.to_vec());
        Ok(m)
    }

    pub fn custom(image: Vec<(Letter, Rat)>) -> Self {
        LetterMap { kind: MapKind::Custom, image }
    }

    pub fn apply(&self, a: Letter) -> &(Letter, Rat) {
        &self.image[a]
    }

    /// `self o other`.
    pub fn compose(&self, other: &LetterMap) -> LetterMap {
        let image = other
            .image
            .iter()
            .map(|(b, c)| {
                let (d, k) = &self.image[*b];
                (*d, c * k)
            })
            .collect();
        LetterMap { kind: MapKind::Custom, image }
    }

    pub fn inverse(&self) -> LetterMap {
        let mut image = self.image.clone();
        for (a, (b, c)) in self.image.iter().enumerate() {
            image[*b] = (a, c.recip());
        }
        LetterMap { kind: MapKind::Custom, image }
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(a, (b, c))| a == *b && c == &one())
    }

    pub fn is_involution(&self) -> bool {
        self.compose(self).is_identity()
    }

    /// Acts as `-id` on the Cartan letters.
    pub fn is_chevalley(&self, lie: &LieAlgebra) -> bool {
        (0..lie.rank()).all(|a| self.image[a] == (a, -one()))
    }

    /// Is an automorphism: brackets are preserved on all letter pairs.
    pub fn is_automorphism(&self, lie: &LieAlgebra) -> bool {
        for a in 0..lie.dim() {
            for b in 0..lie.dim() {
                let (ia, ca) = &self.image[a];
                let (ib, cb) = &self.image[b];
                let lhs: Vec<(Letter, Rat)> = {
                    let mut v: Vec<(Letter, Rat)> =
                        lie.bracket(a, b).iter().map(|(l, k)| (self.image[*l].0, k * &self.image[*l].1)).collect();
                    v.sort_by_key(|x| x.0);
                    v
                };
                let rhs: Vec<(Letter, Rat)> = lie.bracket(*ia, *ib).iter().map(|(l, k)| (*l, k * ca * cb)).collect();
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }
}
