//! The automorphism group of H(n,3) and orbit-minimum canonical forms.
//!
//! An automorphism acts by `σ(x)_j = c_j · x_(π⁻¹(j)) + y_j`: coordinate `i`
//! moves to position `π(i)`, where it is scaled by `c_π(i)` and shifted by
//! `y_π(i)`.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::grid::{collapse, LabelGrid};
use crate::lattice::{check_dim, digit, pow3, TernaryPoint, VertexSet};

/// Largest dimension accepted by the full orbit scan.
pub const CANON_MAX_DIM: usize = 6;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Automorphism {
    perm: Vec<usize>,
    signs: Vec<u8>,
    shift: Vec<u8>,
}

impl Automorphism {
    /// `perm` is 0-based: coordinate `i` moves to position `perm[i]`.
    pub fn new(perm: Vec<usize>, signs: Vec<u8>, shift: Vec<u8>) -> Result<Self> {
        let n = perm.len();
        check_dim(n)?;
        if signs.len() != n || shift.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: if signs.len() != n {
                    signs.len()
                } else {
                    shift.len()
                },
            });
        }
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || seen[p] {
                return Err(Error::InvalidArgument(format!(
                    "{perm:?} is not a permutation"
                )));
            }
            seen[p] = true;
        }
        if signs.iter().any(|&c| c != 1 && c != 2) {
            return Err(Error::InvalidArgument("signs must be 1 or 2".into()));
        }
        if shift.iter().any(|&y| y > 2) {
            return Err(Error::InvalidArgument(
                "shift entries must be in Z_3".into(),
            ));
        }
        Ok(Automorphism { perm, signs, shift })
    }

    pub fn identity(n: usize) -> Self {
        Automorphism {
            perm: (0..n).collect(),
            signs: vec![1; n],
            shift: vec![0; n],
        }
    }

    pub fn translation(y: &TernaryPoint) -> Self {
        let n = y.n();
        Automorphism {
            perm: (0..n).collect(),
            signs: vec![1; n],
            shift: y.coords().to_vec(),
        }
    }

    /// Swaps two 0-based coordinates.
    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut s = Self::identity(n);
        s.perm.swap(a, b);
        s
    }

    pub fn n(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn signs(&self) -> &[u8] {
        &self.signs
    }

    pub fn shift(&self) -> &[u8] {
        &self.shift
    }

    fn check(&self, n: usize) -> Result<()> {
        if n != self.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                found: n,
            });
        }
        Ok(())
    }

    #[inline]
    pub fn apply_index(&self, index: usize) -> usize {
        let mut out = 0;
        for (i, &j) in self.perm.iter().enumerate() {
            let v =
                (self.signs[j] as usize * digit(index, i) as usize + self.shift[j] as usize) % 3;
            out += v * pow3(j);
        }
        out
    }

    pub fn apply(&self, x: &TernaryPoint) -> Result<TernaryPoint> {
        self.check(x.n())?;
        Ok(TernaryPoint::from_index_unchecked(
            self.apply_index(x.index()),
            self.n(),
        ))
    }

    pub fn apply_set(&self, s: &VertexSet) -> Result<VertexSet> {
        self.check(s.n())?;
        let mut out = VertexSet::empty(s.n());
        for i in s.iter() {
            out.insert(self.apply_index(i));
        }
        Ok(out)
    }

    /// Maps a 0-based direction to the direction it is sent to.
    pub fn image_axis(&self, axis: usize) -> usize {
        self.perm[axis]
    }

    /// `compose(σ, τ)` acts as `x ↦ σ(τ(x))`.
    pub fn compose(&self, tau: &Automorphism) -> Result<Automorphism> {
        self.check(tau.n())?;
        let n = self.n();
        let zero = self.apply_index(tau.apply_index(0));
        let shift: Vec<u8> = (0..n).map(|j| digit(zero, j)).collect();
        let mut perm = vec![0; n];
        let mut signs = vec![1; n];
        for (i, p) in perm.iter_mut().enumerate() {
            let img = self.apply_index(tau.apply_index(pow3(i)));
            for j in 0..n {
                let d = (digit(img, j) + 3 - shift[j]) % 3;
                if d != 0 {
                    *p = j;
                    signs[j] = d;
                }
            }
        }
        Ok(Automorphism { perm, signs, shift })
    }

    pub fn inverse(&self) -> Automorphism {
        let n = self.n();
        let mut perm = vec![0; n];
        let mut signs = vec![1; n];
        let mut shift = vec![0; n];
        for (i, &j) in self.perm.iter().enumerate() {
            perm[j] = i;
            // c^{-1} = c in Z_3^*, so x_i = c_j (z_j - y_j)
            signs[i] = self.signs[j];
            shift[i] = (3 - (self.signs[j] * self.shift[j]) % 3) % 3;
        }
        Automorphism { perm, signs, shift }
    }
}

impl fmt::Debug for Automorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Automorphism")
            .field("perm", &self.perm.iter().map(|p| p + 1).collect::<Vec<_>>())
            .field("signs", &self.signs)
            .field("shift", &self.shift)
            .finish()
    }
}

#[derive(Serialize, Deserialize)]
struct AutJson {
    perm: Vec<usize>,
    signs: Vec<u8>,
    shift: Vec<u8>,
}

impl Serialize for Automorphism {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        AutJson {
            perm: self.perm.iter().map(|p| p + 1).collect(),
            signs: self.signs.clone(),
            shift: self.shift.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Automorphism {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = AutJson::deserialize(d)?;
        if raw.perm.contains(&0) {
            return Err(D::Error::custom("perm entries are 1-based"));
        }
        Automorphism::new(
            raw.perm.iter().map(|p| p - 1).collect(),
            raw.signs,
            raw.shift,
        )
        .map_err(D::Error::custom)
    }
}

/// `3^n · n! · 2^n`.
pub fn group_order(n: usize) -> u64 {
    let fact: u64 = (1..=n as u64).product();
    3u64.pow(n as u32) * fact * (1u64 << n)
}

/// Advances to the next permutation in lexicographic order.
pub(crate) fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

fn sign_vectors(n: usize) -> impl Iterator<Item = Vec<u8>> {
    (0..1usize << n).map(move |m| (0..n).map(|k| 1 + ((m >> (n - 1 - k)) & 1) as u8).collect())
}

/// Every group element in (perm lexicographic, signs lexicographic, shift index) order.
pub fn group_elements(n: usize) -> Vec<Automorphism> {
    let mut out = Vec::with_capacity(group_order(n) as usize);
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        for signs in sign_vectors(n) {
            for y in 0..pow3(n) {
                out.push(Automorphism {
                    perm: perm.clone(),
                    signs: signs.clone(),
                    shift: (0..n).map(|j| digit(y, j)).collect(),
                });
            }
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    out
}

/// Lexicographically smallest bit array over the orbit, with an element reaching it.
pub fn canonical_form_with_map(s: &VertexSet) -> Result<(VertexSet, Automorphism)> {
    let n = s.n();
    if n > CANON_MAX_DIM {
        return Err(Error::Capability(format!(
            "canonical form scans the full orbit and is limited to n <= {CANON_MAX_DIM}, got {n}"
        )));
    }
    let size = pow3(n);
    let members: Vec<usize> = s.iter().collect();
    // sub[y * size + k] = index(k - y)
    let mut sub = vec![0u16; size * size];
    for y in 0..size {
        for k in 0..size {
            let mut v = 0;
            for a in 0..n {
                v += ((digit(k, a) + 3 - digit(y, a)) % 3) as usize * pow3(a);
            }
            sub[y * size + k] = v as u16;
        }
    }

    let mut best: Vec<u8> = vec![2; size];
    let mut best_map = Automorphism::identity(n);
    let mut image = vec![0u8; size];
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        for signs in sign_vectors(n) {
            let lin = Automorphism {
                perm: perm.clone(),
                signs: signs.clone(),
                shift: vec![0; n],
            };
            image.iter_mut().for_each(|b| *b = 0);
            for &m in &members {
                image[lin.apply_index(m)] = 1;
            }
            for y in 0..size {
                let row = &sub[y * size..(y + 1) * size];
                let mut better = false;
                for k in 0..size {
                    let v = image[row[k] as usize];
                    if v != best[k] {
                        better = v < best[k];
                        break;
                    }
                }
                if better {
                    for k in 0..size {
                        best[k] = image[row[k] as usize];
                    }
                    best_map = Automorphism {
                        perm: perm.clone(),
                        signs: signs.clone(),
                        shift: (0..n).map(|j| digit(y, j)).collect(),
                    };
                }
            }
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    let form = VertexSet::from_fn(n, |k| best[k] == 1);
    Ok((form, best_map))
}

pub fn canonical_form(s: &VertexSet) -> Result<VertexSet> {
    canonical_form_with_map(s).map(|(f, _)| f)
}

pub fn are_isomorphic(s: &VertexSet, t: &VertexSet) -> Result<bool> {
    Ok(find_isomorphism(s, t)?.is_some())
}

/// Some `σ` with `σ(s) = t`, if one exists.
pub fn find_isomorphism(s: &VertexSet, t: &VertexSet) -> Result<Option<Automorphism>> {
    if s.n() != t.n() {
        return Err(Error::DimensionMismatch {
            expected: s.n(),
            found: t.n(),
        });
    }
    if s.len() != t.len() {
        // still enforce the scan cap so the error surface matches canonical_form
        if s.n() > CANON_MAX_DIM {
            return Err(Error::Capability(format!(
                "isomorphism test is limited to n <= {CANON_MAX_DIM}"
            )));
        }
        return Ok(None);
    }
    let (fs, ms) = canonical_form_with_map(s)?;
    let (ft, mt) = canonical_form_with_map(t)?;
    if fs != ft {
        return Ok(None);
    }
    Ok(Some(mt.inverse().compose(&ms)?))
}

/// Distinct grids `collapse(σ(expand(g)))` over every `σ` that keeps the collapse
/// axis in place, sorted by symbol string.
pub fn grid_orbit(g: &LabelGrid) -> Result<Vec<LabelGrid>> {
    let n = g.n();
    if n > CANON_MAX_DIM {
        return Err(Error::Capability(format!(
            "grid orbits are limited to n <= {CANON_MAX_DIM}"
        )));
    }
    let axis = g.collapse_axis() - 1;
    let s = g.expand();
    let mut seen = std::collections::BTreeMap::new();
    for sigma in group_elements(n)
        .into_iter()
        .filter(|a| a.perm[axis] == axis)
    {
        let image = collapse(&sigma.apply_set(&s)?, axis + 1)?;
        seen.entry(image.symbols()).or_insert(image);
    }
    Ok(seen.into_values().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{a_set, b_set};

    #[test]
    fn identity_and_translation() {
        for n in 1..=3 {
            let id = Automorphism::identity(n);
            for i in 0..pow3(n) {
                assert_eq!(id.apply_index(i), i);
            }
            let e1 = TernaryPoint::unit(n, 1).unwrap();
            let t = Automorphism::translation(&e1);
            assert_eq!(t.apply_set(&a_set(n)).unwrap(), b_set(n));
        }
    }

    #[test]
    fn compose_and_inverse_agree_with_action() {
        let g = group_elements(2);
        assert_eq!(g.len(), 72);
        for s in g.iter().step_by(5) {
            let inv = s.inverse();
            for t in g.iter().step_by(7) {
                let st = s.compose(t).unwrap();
                for x in 0..9 {
                    assert_eq!(st.apply_index(x), s.apply_index(t.apply_index(x)));
                }
            }
            for x in 0..9 {
                assert_eq!(inv.apply_index(s.apply_index(x)), x);
            }
        }
    }

    #[test]
    fn group_order_matches_formula() {
        assert_eq!(group_order(2), 72);
        assert_eq!(group_order(4), 31104);
        assert_eq!(group_elements(3).len() as u64, group_order(3));
    }

    #[test]
    fn json_uses_one_based_perm() {
        let s = Automorphism::new(vec![1, 0, 2], vec![2, 1, 1], vec![0, 1, 2]).unwrap();
        let text = serde_json::to_string(&s).unwrap();
        assert_eq!(text, r#"{"perm":[2,1,3],"signs":[2,1,1],"shift":[0,1,2]}"#);
        let back: Automorphism = serde_json::from_str(&text).unwrap();
        assert_eq!(back, s);
        assert!(serde_json::from_str::<Automorphism>(
            r#"{"perm":[0,1],"signs":[1,1],"shift":[0,0]}"#
        )
        .is_err());
    }

    #[test]
    fn canonical_form_basics() {
        assert_eq!(
            canonical_form(&a_set(3)).unwrap(),
            canonical_form(&b_set(3)).unwrap()
        );
        assert!(canonical_form(&VertexSet::empty(7)).is_err());
        let s = VertexSet::from_indices(3, [0, 5, 13, 22]).unwrap();
        let (f, m) = canonical_form_with_map(&s).unwrap();
        assert_eq!(m.apply_set(&s).unwrap(), f);
        assert_eq!(canonical_form(&f).unwrap(), f);
    }
}
