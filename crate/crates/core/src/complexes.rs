//! Explicit rational chain complexes: the complexes of parabolic inductions
//! `K_{I_0}` built from partial flags over `F_q`, and the order complexes of
//! rational subspaces attached to a single flag, with a contraction witness.

use std::collections::HashMap;

use crate::cohomology::dim_v;
use crate::error::{Error, Result};
use crate::exactalg::{ChainComplexQ, FieldSpec, MatrixQ, Rational, SubspaceGF};
use crate::flagenum::{self, FlagPoint};
use crate::slopes::{self, ClosedFamily, SlopeFunction};
use crate::weyl::{self, ParabolicType};

/// The `F_q`-points of `G/P_I`: partial flags whose steps have the
/// dimensions `j` with `s_j ∉ I`, sorted by their echelon bases.
#[derive(Clone, Debug)]
pub struct CosetSpace {
    parabolic: ParabolicType,
    q: u32,
    points: Vec<Vec<SubspaceGF>>,
    index: HashMap<Vec<SubspaceGF>, usize>,
}

impl CosetSpace {
    pub fn new(parabolic: ParabolicType, q: u32) -> Result<Self> {
        let field = FieldSpec::prime(q)?;
        let mut points = Vec::new();
        flagenum::for_each_partial_flag(&field, parabolic.rank_dim(), &parabolic.cut_dims(), &mut |steps| points.push(steps));
        points.sort();
        let index = points.iter().enumerate().map(|(k, p)| (p.clone(), k)).collect();
        Ok(CosetSpace { parabolic, q, points, index })
    }

    pub fn parabolic(&self) -> ParabolicType {
        self.parabolic
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Vec<SubspaceGF>] {
        &self.points
    }

    pub fn index_of(&self, point: &[SubspaceGF]) -> Option<usize> {
        self.index.get(point).copied()
    }
}

pub fn coset_space(parabolic: ParabolicType, q: u32) -> Result<CosetSpace> {
    CosetSpace::new(parabolic, q)
}

/// `G/P_I -> G/P_J` for `I ⊆ J`: forget the steps whose dimension is not a
/// cut of `J`. Returns the image index of every point of `from`.
pub fn projection_map(from: &CosetSpace, to: &CosetSpace) -> Result<Vec<usize>> {
    if !from.parabolic.is_subset(&to.parabolic) || from.q != to.q {
        return Err(Error::NotNested(from.parabolic.to_string(), to.parabolic.to_string()));
    }
    let from_cuts = from.parabolic.cut_dims();
    let keep: Vec<usize> = to
        .parabolic
        .cut_dims()
        .iter()
        .map(|c| from_cuts.iter().position(|x| x == c).expect("cuts of J are cuts of I"))
        .collect();
    Ok(from
        .points
        .iter()
        .map(|p| {
            let image: Vec<SubspaceGF> = keep.iter().map(|&k| p[k].clone()).collect();
            to.index_of(&image).expect("projection of a partial flag is a partial flag")
        })
        .collect())
}

/// `dim v_{P_I}` as `dim i_{P_I}` minus the rank of the span of the indicator
/// functions of the fibres of `G/P_I -> G/P_J` for all `J = I ∪ {s}`.
pub fn dim_v_by_rank(parabolic: &ParabolicType, q: u32) -> Result<u128> {
    let space = coset_space(*parabolic, q)?;
    let mut triplets = Vec::new();
    let mut row = 0;
    for s in parabolic.complement().indices() {
        let bigger = coset_space(parabolic.with(s), q)?;
        let proj = projection_map(&space, &bigger)?;
        for (x, &y) in proj.iter().enumerate() {
            triplets.push((row + y, x, Rational::from_integer(1.into())));
        }
        row += bigger.len();
    }
    let m = MatrixQ::from_triplets(row, space.len(), triplets)?;
    Ok((space.len() - m.rank()) as u128)
}

/// Sign attached to the pullback `i_{P_J} -> i_{P_I}`, `J = I ∪ {s_i}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SignRule {
    /// `(-1)^{#{s_j ∉ J : j < i}}`: the position of `s_i` among the
    /// reflections missing from `I`. Squares to zero.
    Positional,
    /// `(-1)^i`. Both paths around a square get the same sign, so the
    /// differentials do not compose to zero; kept as a negative control.
    ReflectionIndex,
}

impl SignRule {
    fn sign(&self, j: &ParabolicType, i: usize) -> i64 {
        let exponent = match self {
            SignRule::Positional => j.complement().indices().iter().filter(|&&x| x < i).count(),
            SignRule::ReflectionIndex => i,
        };
        if exponent % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

/// One direct summand `i_{P_I}` of a term of `K_{I_0}`.
#[derive(Clone, Debug)]
pub struct KSummand {
    pub degree: i32,
    pub parabolic: ParabolicType,
    pub offset: usize,
    pub len: usize,
}

#[derive(Clone, Debug)]
pub struct KComplex {
    pub i0: ParabolicType,
    pub q: u32,
    pub summands: Vec<KSummand>,
    pub complex: ChainComplexQ,
}

/// `0 -> i_G -> ⊕_{#(S∖I)=1} i_{P_I} -> ... -> i_{P_{I_0}} -> 0` over all
/// `I ⊇ I_0`, with `i_{P_I}` in degree `#(S \ I) - 1` and differentials the
/// signed pullbacks along `G/P_I -> G/P_J`.
pub fn build_k(i0: &ParabolicType, q: u32, rule: SignRule) -> Result<KComplex> {
    if i0.is_full() {
        return Err(Error::Precondition("I_0 must be a proper subset of S".into()));
    }
    let d = i0.rank_dim();
    let top = i0.complement().len() as i32 - 1;
    let mut spaces: HashMap<ParabolicType, CosetSpace> = HashMap::new();
    let mut by_degree: Vec<Vec<ParabolicType>> = vec![Vec::new(); (top + 2) as usize];
    for p in ParabolicType::all(d).filter(|p| i0.is_subset(p)) {
        by_degree[p.complement().len()].push(p);
        spaces.insert(p, coset_space(p, q)?);
    }
    let mut summands = Vec::new();
    let mut dims = Vec::new();
    let mut location: HashMap<ParabolicType, (usize, usize)> = HashMap::new();
    for (k, ps) in by_degree.iter().enumerate() {
        let mut offset = 0;
        for p in ps {
            let len = spaces[p].len();
            summands.push(KSummand { degree: k as i32 - 1, parabolic: *p, offset, len });
            location.insert(*p, (k, offset));
            offset += len;
        }
        dims.push(offset);
    }
    let mut differentials = Vec::new();
    for k in 0..dims.len() - 1 {
        let mut triplets = Vec::new();
        for big in &by_degree[k] {
            let (_, col_off) = location[big];
            for i in big.indices().into_iter().filter(|&i| i0.is_subset(&big.without(i))) {
                let small = big.without(i);
                let (_, row_off) = location[&small];
                let sign = Rational::from_integer(rule.sign(big, i).into());
                let proj = projection_map(&spaces[&small], &spaces[big])?;
                for (x, &y) in proj.iter().enumerate() {
                    triplets.push((row_off + x, col_off + y, sign.clone()));
                }
            }
        }
        differentials.push(MatrixQ::from_triplets(dims[k + 1], dims[k], triplets)?);
    }
    let complex = ChainComplexQ::new(-1, dims, differentials)?;
    Ok(KComplex { i0: *i0, q, summands, complex })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KReport {
    pub i0: ParabolicType,
    pub q: u32,
    pub dims: Vec<usize>,
    pub homology: Vec<usize>,
    /// `dim v_{P_{I_0}}`, the expected top homology.
    pub expected_top: u128,
    pub pass: bool,
}

/// Homology of `K_{I_0}`: passes iff it vanishes below the top degree and the
/// top has dimension `dim v_{P_{I_0}}`.
pub fn verify_k(i0: &ParabolicType, q: u32) -> Result<KReport> {
    verify_k_with(i0, q, SignRule::Positional)
}

pub fn verify_k_with(i0: &ParabolicType, q: u32, rule: SignRule) -> Result<KReport> {
    let k = build_k(i0, q, rule)?;
    let homology = k.complex.homology_dims();
    let expected_top = dim_v(i0, q as u128);
    let (last, below) = homology.split_last().expect("at least two terms");
    let pass = below.iter().all(|&h| h == 0) && *last as u128 == expected_top;
    Ok(KReport { i0: *i0, q, dims: k.complex.dims().to_vec(), homology, expected_top, pass })
}

/// The rational subspaces `U` whose induced type lies in the family, ordered
/// by inclusion.
#[derive(Clone, Debug)]
pub struct StalkPoset {
    members: Vec<SubspaceGF>,
}

impl StalkPoset {
    pub fn members(&self) -> &[SubspaceGF] {
        &self.members
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }
}

/// `rational` must be the proper nonzero subspaces over the prime field.
pub fn build_stalk(flag: &FlagPoint, family: &ClosedFamily, rational: &[SubspaceGF]) -> Result<StalkPoset> {
    let mut members = Vec::new();
    for u in rational {
        if family.contains(&flag.induced_type(u)?) {
            members.push(u.clone());
        }
    }
    members.sort_by_key(|u| u.dim());
    Ok(StalkPoset { members })
}

/// Reduced rational homology of the order complex of a finite poset of
/// subspaces, in degrees `-1, 0, 1, ...` up to the top simplex dimension.
pub fn order_complex_homology(members: &[SubspaceGF]) -> Result<Vec<usize>> {
    let n = members.len();
    let mut below = vec![vec![false; n]; n];
    for a in 0..n {
        for b in 0..n {
            below[a][b] = a != b && members[a].dim() < members[b].dim() && members[a].is_subspace_of(&members[b])?;
        }
    }
    // simplices[k] holds the chains with k + 1 elements; index -1 is the empty chain.
    let mut simplices: Vec<Vec<Vec<usize>>> = vec![(0..n).map(|v| vec![v]).collect()];
    loop {
        let next: Vec<Vec<usize>> = simplices
            .last()
            .unwrap()
            .iter()
            .flat_map(|c| {
                let top = *c.last().unwrap();
                let below = &below;
                (0..n).filter(move |&v| below[top][v]).map(move |v| {
                    let mut e = c.clone();
                    e.push(v);
                    e
                })
            })
            .collect();
        if next.is_empty() {
            break;
        }
        simplices.push(next);
    }
    if n == 0 {
        simplices.clear();
    }
    let mut dims = vec![1];
    dims.extend(simplices.iter().map(|s| s.len()));
    let mut differentials = Vec::new();
    // Coboundary from the empty chain to vertices.
    if let Some(vertices) = simplices.first() {
        differentials.push(MatrixQ::from_triplets(vertices.len(), 1, (0..vertices.len()).map(|v| (v, 0, Rational::from_integer(1.into()))))?);
    }
    for k in 1..simplices.len() {
        let index: HashMap<&Vec<usize>, usize> = simplices[k - 1].iter().enumerate().map(|(i, s)| (s, i)).collect();
        let mut triplets = Vec::new();
        for (r, chain) in simplices[k].iter().enumerate() {
            for j in 0..chain.len() {
                let mut face = chain.clone();
                face.remove(j);
                let sign = if j % 2 == 0 { 1 } else { -1 };
                triplets.push((r, index[&face], Rational::from_integer(sign.into())));
            }
        }
        differentials.push(MatrixQ::from_triplets(simplices[k].len(), simplices[k - 1].len(), triplets)?);
    }
    Ok(ChainComplexQ::new(-1, dims, differentials)?.homology_dims())
}

/// Reduced homology of the stalk poset's order complex; empty for an empty
/// poset (the flag is not in `Y`).
pub fn stalk_homology(stalk: &StalkPoset) -> Result<Vec<usize>> {
    if stalk.is_empty() {
        return Ok(Vec::new());
    }
    order_complex_homology(&stalk.members)
}

/// A map `f(U) = U + U_0` on the poset with `U <= f(U) >= U_0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuillenWitness {
    /// Index of the inclusion-minimal member `U_0`.
    pub base: usize,
    /// Index of `f(U)` for every member `U`.
    pub images: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuillenOutcome {
    Witness(QuillenWitness),
    /// A member `U` whose image `U + U_0` leaves the poset.
    Counterexample(SubspaceGF),
}

/// Picks a member `U_0` of least dimension (hence inclusion-minimal) and
/// checks that `U ↦ U + U_0` maps the poset into itself.
pub fn quillen_witness(stalk: &StalkPoset, flag: &FlagPoint, family: &ClosedFamily) -> Result<QuillenOutcome> {
    let Some(u0) = stalk.members.first() else {
        return Err(Error::Precondition("empty stalk poset".into()));
    };
    let index: HashMap<&SubspaceGF, usize> = stalk.members.iter().enumerate().map(|(i, u)| (u, i)).collect();
    let d = u0.ambient_dim();
    let mut images = Vec::with_capacity(stalk.len());
    for u in &stalk.members {
        let f = u.sum(u0)?;
        let inside = f.dim() < d && family.contains(&flag.induced_type(&f)?);
        match index.get(&f) {
            Some(&k) if inside && u.is_subspace_of(&f)? && u0.is_subspace_of(&f)? => images.push(k),
            _ => return Ok(QuillenOutcome::Counterexample(u.clone())),
        }
    }
    // f is order preserving: U ⊆ U' implies U + U_0 ⊆ U' + U_0.
    for (a, ua) in stalk.members.iter().enumerate() {
        for (b, ub) in stalk.members.iter().enumerate() {
            if ua.is_subspace_of(ub)? && !stalk.members[images[a]].is_subspace_of(&stalk.members[images[b]])? {
                return Err(Error::Precondition("sum with a fixed subspace failed to preserve inclusion".into()));
            }
        }
    }
    Ok(QuillenOutcome::Witness(QuillenWitness { base: 0, images }))
}

/// Flags over `F_{p^n}` whose standard subspaces `<e_1, ..., e_j>` have
/// induced type in the family for every `s_j ∉ I`.
pub fn standard_stratum_count(g: &SlopeFunction, family: &ClosedFamily, parabolic: &ParabolicType, p: u32, n: u32) -> Result<u128> {
    let d = g.dim();
    if parabolic.rank_dim() != d {
        return Err(Error::SizeMismatch(parabolic.rank_dim(), d));
    }
    let field = FieldSpec::new(p, n)?;
    let prime = FieldSpec::prime(p)?;
    let standard: Vec<SubspaceGF> = parabolic
        .complement()
        .indices()
        .into_iter()
        .map(|j| SubspaceGF::coordinate(&prime, d, &(0..j).collect::<Vec<_>>()))
        .collect();
    let mut count = 0u128;
    let mut failure = None;
    flagenum::for_each_flag(g, &field, |flag| {
        let mut all = true;
        for v in &standard {
            match flag.induced_type(v) {
                Ok(h) => all &= family.contains(&h),
                Err(e) => failure = Some(e),
            }
        }
        count += u128::from(all);
    });
    match failure {
        Some(e) => Err(e),
        None => Ok(count),
    }
}

/// `sum q^{l(w)}` over `w ∈ W^mu` with `I_w ⊆ I`.
pub fn omega_count(g: &SlopeFunction, family: &ClosedFamily, parabolic: &ParabolicType, q: u128) -> Result<u128> {
    let mu = g.cocharacter();
    let mut total = 0;
    for w in weyl::kostant_reps(&mu) {
        if slopes::i_w(&w, &mu, family)?.is_subset(parabolic) {
            total += q.pow(w.length() as u32);
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::dim_induced;
    use crate::exactalg::proper_subspaces;
    use crate::slopes::FilteredSpace;

    fn standard_flag(g: &SlopeFunction, field: &FieldSpec) -> FlagPoint {
        let d = g.dim();
        let dims = g.step_dims();
        let steps = dims[..dims.len() - 1].iter().map(|&k| SubspaceGF::coordinate(field, d, &(0..k).collect::<Vec<_>>())).collect();
        FilteredSpace::new(g, steps).unwrap()
    }

    fn pt(d: usize, idx: &[usize]) -> ParabolicType {
        ParabolicType::from_indices(d, idx).unwrap()
    }

    #[test]
    fn coset_spaces_and_projections() {
        let borel = coset_space(ParabolicType::borel(3), 2).unwrap();
        let max = coset_space(pt(3, &[1]), 2).unwrap();
        let point = coset_space(ParabolicType::full(3), 2).unwrap();
        assert_eq!((borel.len(), max.len(), point.len()), (21, 7, 1));
        let proj = projection_map(&borel, &max).unwrap();
        let mut fibres = vec![0; max.len()];
        for y in proj {
            fibres[y] += 1;
        }
        assert!(fibres.iter().all(|&f| f == 3));
        assert_eq!(projection_map(&max, &max).unwrap(), (0..7).collect::<Vec<_>>());
        assert!(projection_map(&borel, &point).unwrap().iter().all(|&y| y == 0));
        assert!(matches!(projection_map(&max, &borel), Err(Error::NotNested(..))));
        for d in 2..=4 {
            for p in ParabolicType::all(d) {
                assert_eq!(coset_space(p, 2).unwrap().len() as u128, dim_induced(&p, 2));
            }
        }
    }

    #[test]
    fn k_complex_dims_and_homology() {
        let r = verify_k(&ParabolicType::borel(3), 2).unwrap();
        assert_eq!(r.dims, vec![1, 14, 21]);
        assert_eq!(r.homology, vec![0, 0, 8]);
        assert!(r.pass);
        let r = verify_k(&ParabolicType::borel(2), 2).unwrap();
        assert_eq!((r.dims.clone(), r.homology.clone()), (vec![1, 3], vec![0, 2]));
        let r = verify_k(&pt(3, &[2]), 2).unwrap();
        assert_eq!((r.dims.clone(), r.homology.clone()), (vec![1, 7], vec![0, 6]));
        assert!(build_k(&ParabolicType::full(3), 2, SignRule::Positional).is_err());
    }

    #[test]
    fn reflection_index_signs_do_not_square_to_zero() {
        let err = build_k(&ParabolicType::borel(3), 2, SignRule::ReflectionIndex).unwrap_err();
        assert!(matches!(err, Error::MalformedComplex { .. }));
    }

    #[test]
    fn steinberg_dimension_by_rank() {
        for d in 2..=3 {
            for q in [2, 3] {
                for p in ParabolicType::all(d) {
                    assert_eq!(dim_v_by_rank(&p, q).unwrap(), dim_v(&p, q as u128));
                }
            }
        }
    }

    #[test]
    fn stalks_on_the_projective_line() {
        let g = SlopeFunction::from_triples(&[(1, 1, 1), (-1, 1, 1)]).unwrap();
        let gf2 = FieldSpec::prime(2).unwrap();
        let rational = proper_subspaces(&gf2, 2);
        let ss = ClosedFamily::semistable();
        flagenum::for_each_flag(&g, &gf2, |flag| {
            let stalk = build_stalk(&flag, &ss, &rational).unwrap();
            assert_eq!(stalk.len(), 1);
            assert_eq!(stalk_homology(&stalk).unwrap(), vec![0, 0]);
            let QuillenOutcome::Witness(w) = quillen_witness(&stalk, &flag, &ss).unwrap() else { panic!() };
            assert_eq!(w.images, vec![0]);
        });
        let gf4 = FieldSpec::new(2, 2).unwrap();
        let mut empty = 0;
        flagenum::for_each_flag(&g, &gf4, |flag| {
            let stalk = build_stalk(&flag, &ss, &rational).unwrap();
            if stalk.is_empty() {
                empty += 1;
                assert!(stalk_homology(&stalk).unwrap().is_empty());
                assert!(quillen_witness(&stalk, &flag, &ss).is_err());
            }
        });
        assert_eq!(empty, 2);
    }

    #[test]
    fn order_complex_examples() {
        let gf2 = FieldSpec::prime(2).unwrap();
        // All proper subspaces of F_2^3: the Tits building, a wedge of 8 circles.
        let all = proper_subspaces(&gf2, 3);
        assert_eq!(order_complex_homology(&all).unwrap(), vec![0, 0, 8]);
        // Two incomparable lines: two points.
        let lines: Vec<_> = all.iter().filter(|u| u.dim() == 1).take(2).cloned().collect();
        assert_eq!(order_complex_homology(&lines).unwrap(), vec![0, 1]);
        assert_eq!(order_complex_homology(&[]).unwrap(), vec![1]);
    }

    #[test]
    fn chain_stalk_is_fixed() {
        let gf2 = FieldSpec::prime(2).unwrap();
        let chain = vec![SubspaceGF::coordinate(&gf2, 3, &[0]), SubspaceGF::coordinate(&gf2, 3, &[0, 1])];
        let g = SlopeFunction::from_triples(&[(2, 1, 1), (1, 1, 1), (-3, 1, 1)]).unwrap();
        let flag = standard_flag(&g, &gf2);
        let stalk = StalkPoset { members: chain };
        let QuillenOutcome::Witness(w) = quillen_witness(&stalk, &flag, &ClosedFamily::semistable()).unwrap() else { panic!() };
        assert_eq!(w.images, vec![0, 1]);
        assert_eq!(order_complex_homology(stalk.members()).unwrap(), vec![0, 0, 0]);
    }
}
