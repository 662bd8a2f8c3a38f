//! The symmetric group `S_d` as the Weyl group of `GL_d`: lengths, Bruhat
//! order, parabolic subgroups, minimal coset representatives.
//!
//! Permutations compose as functions, `(uv)(i) = u(v(i))`. A permutation acts
//! on a cocharacter by `(w mu)_k = mu_{w^{-1}(k)}`, so left multiplication
//! permutes the values `1..=d` and right multiplication permutes positions.

use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::Slope;

/// A permutation of `{1, ..., d}`, stored 0-based in one-line notation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(d: usize) -> Self {
        Permutation((0..d).collect())
    }

    /// From 1-based one-line notation `[w(1), ..., w(d)]`.
    pub fn from_one_line(images: &[usize]) -> Result<Self> {
        let d = images.len();
        let mut seen = vec![false; d];
        let mut out = Vec::with_capacity(d);
        for &x in images {
            if x == 0 || x > d || seen[x - 1] {
                return Err(Error::InvalidPermutation(format!("{images:?} is not a permutation of 1..={d}")));
            }
            seen[x - 1] = true;
            out.push(x - 1);
        }
        Ok(Permutation(out))
    }

    /// The cycle `(c_1, c_2, ..., c_k)` in `S_d` (1-based), mapping `c_i` to `c_{i+1}`.
    pub fn from_cycle(d: usize, cycle: &[usize]) -> Result<Self> {
        let mut images: Vec<usize> = (1..=d).collect();
        if cycle.iter().any(|&c| c == 0 || c > d) || cycle.iter().duplicates().next().is_some() {
            return Err(Error::InvalidPermutation(format!("bad cycle {cycle:?} in S_{d}")));
        }
        for (k, &c) in cycle.iter().enumerate() {
            images[c - 1] = cycle[(k + 1) % cycle.len()];
        }
        Self::from_one_line(&images)
    }

    /// The simple reflection `s_i = (i, i+1)`, `1 <= i < d`.
    pub fn simple(d: usize, i: usize) -> Result<Self> {
        if i == 0 || i >= d {
            return Err(Error::IndexOutOfRange { index: i, lo: 1, hi: d.saturating_sub(1) });
        }
        let mut v: Vec<usize> = (0..d).collect();
        v.swap(i - 1, i);
        Ok(Permutation(v))
    }

    pub fn longest(d: usize) -> Self {
        Permutation((0..d).rev().collect())
    }

    /// All of `S_d` in lexicographic order of one-line notation.
    pub fn all(d: usize) -> impl Iterator<Item = Permutation> {
        (0..d).permutations(d).map(Permutation)
    }

    pub fn size(&self) -> usize {
        self.0.len()
    }

    /// 0-based image of the 0-based point `i`.
    #[inline]
    pub fn image(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn one_line(&self) -> Vec<usize> {
        self.0.iter().map(|x| x + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.size() != other.size() {
            return Err(Error::SizeMismatch(self.size(), other.size()));
        }
        Ok(Permutation(other.0.iter().map(|&i| self.0[i]).collect()))
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.size()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x] = i;
        }
        Permutation(inv)
    }

    /// Coxeter length: the number of inversions.
    pub fn length(&self) -> usize {
        let v = &self.0;
        (0..v.len()).map(|i| (i + 1..v.len()).filter(|&j| v[i] > v[j]).count()).sum()
    }

    /// A reduced word `[i_1, ..., i_r]` (1-based) with `self = s_{i_1} ... s_{i_r}`.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut v = self.0.clone();
        let mut word = Vec::new();
        while let Some(j) = (0..v.len().saturating_sub(1)).find(|&j| v[j] > v[j + 1]) {
            v.swap(j, j + 1);
            word.push(j + 1);
        }
        word.reverse();
        word
    }

    /// Bruhat order by the tableau criterion: `u <= w` iff for all `i, j`,
    /// `#{k <= i : u(k) >= j} <= #{k <= i : w(k) >= j}`.
    pub fn bruhat_leq(&self, w: &Permutation) -> Result<bool> {
        if self.size() != w.size() {
            return Err(Error::SizeMismatch(self.size(), w.size()));
        }
        let d = self.size();
        for j in 0..d {
            let (mut cu, mut cw) = (0, 0);
            for i in 0..d {
                cu += usize::from(self.0[i] >= j);
                cw += usize::from(w.0[i] >= j);
                if cu > cw {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.one_line().iter().join(","))
    }
}

/// A weakly decreasing rational cocharacter `(x_1 >= ... >= x_d)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cocharacter(Vec<Slope>);

impl Cocharacter {
    pub fn new(entries: Vec<Slope>) -> Result<Self> {
        if entries.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NonMonotone);
        }
        Ok(Cocharacter(entries))
    }

    pub fn from_integers(entries: &[i64]) -> Result<Self> {
        Self::new(entries.iter().map(|&x| Slope::from_integer(x)).collect())
    }

    pub fn entries(&self) -> &[Slope] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// `(w mu)_k = mu_{w^{-1}(k)}`.
    pub fn act(&self, w: &Permutation) -> Result<Vec<Slope>> {
        act(w, &self.0)
    }

    /// Pairing of `w mu` with the fundamental weights: the prefix sums
    /// `sum_{k <= i} (w mu)_k` for `i = 1..d-1`.
    pub fn fundamental_pairings(&self, w: &Permutation) -> Result<Vec<Slope>> {
        let v = self.act(w)?;
        Ok(v.iter()
            .take(v.len().saturating_sub(1))
            .scan(Slope::from_integer(0), |acc, x| {
                *acc += x;
                Some(*acc)
            })
            .collect())
    }
}

/// `(w x)_k = x_{w^{-1}(k)}` for an arbitrary vector `x`.
pub fn act(w: &Permutation, x: &[Slope]) -> Result<Vec<Slope>> {
    if w.size() != x.len() {
        return Err(Error::SizeMismatch(w.size(), x.len()));
    }
    let mut out = vec![Slope::from_integer(0); x.len()];
    for (i, &xi) in x.iter().enumerate() {
        out[w.image(i)] = xi;
    }
    Ok(out)
}

/// A subset `I` of the simple reflections `S = {s_1, ..., s_{d-1}}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ParabolicType {
    d: usize,
    /// Bit `j - 1` set iff `s_j` is in the subset.
    mask: u64,
}

impl ParabolicType {
    pub fn new(d: usize, mask: u64) -> Result<Self> {
        if d == 0 || d > 64 || (d > 1 && mask >> (d - 1) != 0) || (d == 1 && mask != 0) {
            return Err(Error::Precondition(format!("mask {mask:#b} is not a subset of S for d = {d}")));
        }
        Ok(ParabolicType { d, mask })
    }

    /// `I = ∅`, the Borel subgroup.
    pub fn borel(d: usize) -> Self {
        ParabolicType { d, mask: 0 }
    }

    /// `I = S`, the whole group.
    pub fn full(d: usize) -> Self {
        ParabolicType {
            d,
            mask: if d <= 1 { 0 } else { (1u64 << (d - 1)) - 1 },
        }
    }

    /// From 1-based simple reflection indices.
    pub fn from_indices(d: usize, indices: &[usize]) -> Result<Self> {
        let mut mask = 0;
        for &i in indices {
            if i == 0 || i >= d {
                return Err(Error::IndexOutOfRange { index: i, lo: 1, hi: d.saturating_sub(1) });
            }
            mask |= 1 << (i - 1);
        }
        Ok(ParabolicType { d, mask })
    }

    /// The type whose blocks have the given sizes.
    pub fn from_composition(parts: &[usize]) -> Result<Self> {
        if parts.is_empty() || parts.contains(&0) {
            return Err(Error::Precondition(format!("{parts:?} is not a composition")));
        }
        let d = parts.iter().sum();
        let mut full = Self::full(d);
        let mut cut = 0;
        for &p in &parts[..parts.len() - 1] {
            cut += p;
            full.mask &= !(1 << (cut - 1));
        }
        Ok(full)
    }

    /// All subsets of `S`, by increasing mask.
    pub fn all(d: usize) -> impl Iterator<Item = ParabolicType> {
        let full = Self::full(d).mask;
        (0..=full).map(move |mask| ParabolicType { d, mask })
    }

    pub fn rank_dim(&self) -> usize {
        self.d
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    /// Whether `s_i` (1-based) belongs to the subset.
    pub fn contains(&self, i: usize) -> bool {
        i >= 1 && i < self.d && self.mask & (1 << (i - 1)) != 0
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn is_full(&self) -> bool {
        *self == Self::full(self.d)
    }

    pub fn is_subset(&self, other: &ParabolicType) -> bool {
        self.d == other.d && self.mask & !other.mask == 0
    }

    /// 1-based indices of the reflections in the subset.
    pub fn indices(&self) -> Vec<usize> {
        (1..self.d).filter(|&i| self.contains(i)).collect()
    }

    /// `S \ I`, as a set of reflections.
    pub fn complement(&self) -> ParabolicType {
        ParabolicType {
            d: self.d,
            mask: Self::full(self.d).mask & !self.mask,
        }
    }

    pub fn with(&self, i: usize) -> ParabolicType {
        ParabolicType {
            d: self.d,
            mask: self.mask | (1 << (i - 1)),
        }
    }

    pub fn without(&self, i: usize) -> ParabolicType {
        ParabolicType {
            d: self.d,
            mask: self.mask & !(1 << (i - 1)),
        }
    }

    /// Dimensions `j` with `s_j ∉ I`: the subspace dimensions of a partial
    /// flag of this type.
    pub fn cut_dims(&self) -> Vec<usize> {
        (1..self.d).filter(|&j| !self.contains(j)).collect()
    }

    /// Block sizes `(d_1, ..., d_r)` of the Levi subgroup.
    pub fn composition(&self) -> Vec<usize> {
        let mut cuts = self.cut_dims();
        cuts.push(self.d);
        let mut prev = 0;
        cuts.into_iter()
            .map(|c| {
                let part = c - prev;
                prev = c;
                part
            })
            .collect()
    }

    /// Position blocks `[start, end)` (0-based) of the Levi subgroup.
    pub fn blocks(&self) -> Vec<(usize, usize)> {
        let mut start = 0;
        self.composition()
            .into_iter()
            .map(|p| {
                let b = (start, start + p);
                start += p;
                b
            })
            .collect()
    }
}

impl fmt::Debug for ParabolicType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for ParabolicType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.indices().iter().map(|i| format!("s{i}")).join(","))
    }
}

pub fn length(w: &Permutation) -> usize {
    w.length()
}

pub fn bruhat_leq(u: &Permutation, w: &Permutation) -> Result<bool> {
    u.bruhat_leq(w)
}

/// The simple reflections fixing `mu`: `s_j` with `mu_j = mu_{j+1}`.
pub fn stabilizer_type(mu: &Cocharacter) -> ParabolicType {
    let d = mu.dim().max(1);
    let idx: Vec<usize> = (1..mu.dim()).filter(|&j| mu.0[j - 1] == mu.0[j]).collect();
    ParabolicType::from_indices(d, &idx).expect("indices are in range")
}

/// Whether `w` is the minimal-length element of `w W_J`, i.e. increasing on
/// every position block of `J`.
pub fn is_min_coset_rep(w: &Permutation, j: &ParabolicType) -> bool {
    j.indices().iter().all(|&s| w.image(s - 1) < w.image(s))
}

/// Minimal-length representatives of `W / W_mu`, sorted by (length, one-line).
pub fn kostant_reps(mu: &Cocharacter) -> Vec<Permutation> {
    let stab = stabilizer_type(mu);
    let mut reps: Vec<Permutation> = Permutation::all(mu.dim()).filter(|w| is_min_coset_rep(w, &stab)).collect();
    reps.sort_by_cached_key(|w| (w.length(), w.clone()));
    reps
}

/// `w = ẇ u` with `ẇ` minimal in `w W_J` and `u ∈ W_J`.
pub fn parabolic_factorization(w: &Permutation, j: &ParabolicType) -> Result<(Permutation, Permutation)> {
    if w.size() != j.rank_dim() {
        return Err(Error::SizeMismatch(w.size(), j.rank_dim()));
    }
    let mut images = w.0.clone();
    for (a, b) in j.blocks() {
        images[a..b].sort_unstable();
    }
    let min = Permutation(images);
    let u = min.inverse().compose(w)?;
    Ok((min, u))
}

/// Invariant of the double coset `W_î w W_J`: for each position block of `J`,
/// how many of its positions `w` sends into `{1, ..., i}`.
fn double_coset_key(w: &Permutation, i: usize, blocks: &[(usize, usize)]) -> Vec<usize> {
    blocks.iter().map(|&(a, b)| (a..b).filter(|&k| w.image(k) < i).count()).collect()
}

/// One minimal-length representative of each double coset
/// `W_î \ W / W_mu`, where `W_î` is generated by `S \ {s_i}`; sorted by
/// (length, one-line).
pub fn double_coset_reps(i: usize, mu: &Cocharacter) -> Result<Vec<Permutation>> {
    let d = mu.dim();
    if i == 0 || i >= d {
        return Err(Error::IndexOutOfRange { index: i, lo: 1, hi: d.saturating_sub(1) });
    }
    let blocks = stabilizer_type(mu).blocks();
    let mut best: std::collections::BTreeMap<Vec<usize>, Permutation> = Default::default();
    for w in Permutation::all(d) {
        let key = double_coset_key(&w, i, &blocks);
        match best.get(&key) {
            Some(cur) if (cur.length(), cur) <= (w.length(), &w) => {}
            _ => {
                best.insert(key, w);
            }
        }
    }
    let mut reps: Vec<Permutation> = best.into_values().collect();
    reps.sort_by_cached_key(|w| (w.length(), w.clone()));
    Ok(reps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn cyc(d: usize, c: &[usize]) -> Permutation {
        Permutation::from_cycle(d, c).unwrap()
    }

    /// Bruhat order via subwords of a reduced word: `u <= w` iff `u` is a
    /// product of a subword.
    fn subword_leq(u: &Permutation, w: &Permutation) -> bool {
        let d = w.size();
        let word = w.reduced_word();
        (0..1u32 << word.len()).any(|sel| {
            let mut p = Permutation::identity(d);
            for (k, &s) in word.iter().enumerate() {
                if sel & (1 << k) != 0 {
                    p = p.compose(&Permutation::simple(d, s).unwrap()).unwrap();
                }
            }
            &p == u
        })
    }

    #[test]
    fn lengths() {
        assert_eq!(Permutation::identity(5).length(), 0);
        assert_eq!(cyc(5, &[2, 3, 4]).length(), 2);
        assert_eq!(cyc(5, &[2, 3, 4]).one_line(), vec![1, 3, 4, 2, 5]);
        assert_eq!(cyc(5, &[2, 3, 4, 5]).length(), 3);
        assert_eq!(cyc(5, &[2, 3, 4, 5]).one_line(), vec![1, 3, 4, 5, 2]);
        assert_eq!(Permutation::longest(4).length(), 6);
    }

    #[test]
    fn inverse_and_reduced_words() {
        for w in Permutation::all(5) {
            assert!(w.compose(&w.inverse()).unwrap().is_identity());
            assert_eq!(w.inverse().length(), w.length());
            let word = w.reduced_word();
            assert_eq!(word.len(), w.length());
            let mut p = Permutation::identity(5);
            for s in word {
                p = p.compose(&Permutation::simple(5, s).unwrap()).unwrap();
            }
            assert_eq!(p, w);
        }
    }

    #[test]
    fn bruhat_examples() {
        let w = cyc(5, &[2, 3, 4, 5]);
        assert!(w.bruhat_leq(&w).unwrap());
        assert!(cyc(5, &[2, 3, 4]).bruhat_leq(&w).unwrap());
        assert!(!w.bruhat_leq(&cyc(5, &[2, 3, 4])).unwrap());
        for d in 2..6 {
            assert!(!Permutation::longest(d).bruhat_leq(&Permutation::identity(d)).unwrap());
            assert!(Permutation::identity(d).bruhat_leq(&Permutation::longest(d)).unwrap());
        }
        assert!(Permutation::identity(3).bruhat_leq(&Permutation::identity(4)).is_err());
    }

    #[test]
    fn bruhat_matches_subword_oracle() {
        for d in 1..=4 {
            let all: Vec<_> = Permutation::all(d).collect();
            for u in &all {
                for w in &all {
                    assert_eq!(u.bruhat_leq(w).unwrap(), subword_leq(u, w), "{u} vs {w}");
                }
            }
        }
    }

    #[test]
    fn action_examples() {
        let mu = Cocharacter::from_integers(&[4, 3, 2, 1, -10]).unwrap();
        let ints = |v: Vec<Slope>| v.into_iter().map(|x| x.to_integer()).collect::<Vec<_>>();
        assert_eq!(ints(mu.act(&Permutation::identity(5)).unwrap()), vec![4, 3, 2, 1, -10]);
        assert_eq!(ints(mu.act(&cyc(5, &[2, 3, 4])).unwrap()), vec![4, 1, 3, 2, -10]);
        assert_eq!(ints(mu.act(&cyc(5, &[2, 3, 4, 5])).unwrap()), vec![4, -10, 3, 2, 1]);
        assert!(mu.act(&Permutation::identity(4)).is_err());
    }

    #[test]
    fn action_is_a_left_action() {
        let x: Vec<Slope> = [5, 3, 2, 0, -1].iter().map(|&v| Slope::from_integer(v)).collect();
        let all: Vec<_> = Permutation::all(5).collect();
        for v in all.iter().step_by(7) {
            for w in all.iter().step_by(11) {
                let lhs = act(&v.compose(w).unwrap(), &x).unwrap();
                let rhs = act(v, &act(w, &x).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn stabilizers() {
        assert!(stabilizer_type(&Cocharacter::from_integers(&[2, 1, -3]).unwrap()).is_empty());
        assert_eq!(stabilizer_type(&Cocharacter::from_integers(&[1, 1, -2]).unwrap()).indices(), vec![1]);
        assert_eq!(stabilizer_type(&Cocharacter::from_integers(&[1, 1, -1, -1]).unwrap()).indices(), vec![1, 3]);
        assert_eq!(Cocharacter::from_integers(&[1, 2]).unwrap_err(), Error::NonMonotone);
    }

    #[test]
    fn kostant_examples() {
        // Drinfeld type: 1, s1, s2 s1, ..., s_{d-1} ... s1.
        let mu = Cocharacter::from_integers(&[3, -1, -1, -1]).unwrap();
        let reps = kostant_reps(&mu);
        let mut expected = vec![Permutation::identity(4)];
        for i in 1..4 {
            let next = Permutation::simple(4, i).unwrap().compose(expected.last().unwrap()).unwrap();
            expected.push(next);
        }
        assert_eq!(reps, expected);

        assert_eq!(kostant_reps(&Cocharacter::from_integers(&[2, 1, -3]).unwrap()).len(), 6);
        assert_eq!(kostant_reps(&Cocharacter::from_integers(&[1, 1, -1, -1]).unwrap()).len(), 6);
    }

    #[test]
    fn unique_parabolic_factorization() {
        for comp in [vec![2, 3], vec![1, 2, 2], vec![5], vec![1, 1, 1, 1, 1], vec![3, 1, 1]] {
            let j = ParabolicType::from_composition(&comp).unwrap();
            let blocks_order: u64 = comp.iter().map(|&c| (1..=c as u64).product::<u64>()).product();
            let mu: Vec<i64> = comp.iter().enumerate().flat_map(|(b, &c)| std::iter::repeat(10 - b as i64).take(c)).collect();
            let reps: HashSet<_> = kostant_reps(&Cocharacter::from_integers(&mu).unwrap()).into_iter().collect();
            assert_eq!(reps.len() as u64 * blocks_order, 120);
            for w in Permutation::all(5) {
                let (min, u) = parabolic_factorization(&w, &j).unwrap();
                assert!(reps.contains(&min));
                assert!(is_min_coset_rep(&min, &j));
                assert_eq!(min.compose(&u).unwrap(), w);
                assert_eq!(min.length() + u.length(), w.length());
                // u permutes positions inside blocks only.
                for (a, b) in j.blocks() {
                    assert!((a..b).all(|k| (a..b).contains(&u.image(k))));
                }
            }
        }
    }

    /// Double cosets by closing `{w}` under left multiplication by `s_j`
    /// (`j != i`) and right multiplication by generators of `W_mu`.
    fn orbit_double_cosets(d: usize, i: usize, stab: &ParabolicType) -> Vec<HashSet<Permutation>> {
        let mut seen: HashSet<Permutation> = HashSet::new();
        let mut cosets = Vec::new();
        for w in Permutation::all(d) {
            if seen.contains(&w) {
                continue;
            }
            let mut orbit = HashSet::from([w.clone()]);
            let mut stack = vec![w];
            while let Some(x) = stack.pop() {
                let mut next = Vec::new();
                for j in (1..d).filter(|&j| j != i) {
                    next.push(Permutation::simple(d, j).unwrap().compose(&x).unwrap());
                }
                for j in stab.indices() {
                    next.push(x.compose(&Permutation::simple(d, j).unwrap()).unwrap());
                }
                for y in next {
                    if orbit.insert(y.clone()) {
                        stack.push(y);
                    }
                }
            }
            seen.extend(orbit.iter().cloned());
            cosets.push(orbit);
        }
        cosets
    }

    #[test]
    fn double_cosets_match_orbit_oracle() {
        for mu in [vec![1, -1], vec![2, 1, -3], vec![1, 1, -2], vec![1, 1, -1, -1], vec![3, 1, 0, -4], vec![2, 2, 2, -3, -3], vec![4, 3, 2, 1, -10]] {
            let mu = Cocharacter::from_integers(&mu).unwrap();
            let d = mu.dim();
            for i in 1..d {
                let reps = double_coset_reps(i, &mu).unwrap();
                let orbits = orbit_double_cosets(d, i, &stabilizer_type(&mu));
                assert_eq!(reps.len(), orbits.len());
                for orbit in &orbits {
                    let min = orbit.iter().min_by_key(|w| (w.length(), (*w).clone())).unwrap();
                    assert!(reps.contains(min));
                    // Unique element of minimal length.
                    assert_eq!(orbit.iter().filter(|w| w.length() == min.length()).count(), 1);
                }
            }
        }
    }

    #[test]
    fn double_coset_examples() {
        let mu = Cocharacter::from_integers(&[1, -1]).unwrap();
        assert_eq!(double_coset_reps(1, &mu).unwrap(), vec![Permutation::identity(2), Permutation::simple(2, 1).unwrap()]);
        assert_eq!(double_coset_reps(1, &Cocharacter::from_integers(&[2, 1, -3]).unwrap()).unwrap().len(), 3);
        assert_eq!(double_coset_reps(1, &Cocharacter::from_integers(&[1, 1, -2]).unwrap()).unwrap().len(), 2);
        assert!(double_coset_reps(2, &mu).is_err());
    }

    #[test]
    fn parabolic_types() {
        let t = ParabolicType::from_indices(5, &[1, 3]).unwrap();
        assert_eq!(t.composition(), vec![2, 2, 1]);
        assert_eq!(t.cut_dims(), vec![2, 4]);
        assert_eq!(ParabolicType::from_composition(&[2, 2, 1]).unwrap(), t);
        assert_eq!(ParabolicType::full(4).composition(), vec![4]);
        assert_eq!(ParabolicType::borel(4).composition(), vec![1, 1, 1, 1]);
        assert_eq!(t.complement().indices(), vec![2, 4]);
        assert_eq!(ParabolicType::all(4).count(), 8);
        assert_eq!(t.to_string(), "{s1,s3}");
        assert!(ParabolicType::from_indices(3, &[3]).is_err());
    }
}
