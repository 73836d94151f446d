//! The group algebra of S_k: class functions stored per cycle type, dense
//! functions stored per permutation, convolution, and inversion.
//!
//! Class functions convolve in the character basis (the Fourier coefficients
//! multiply up to k!/f^λ); the dense O(k!·k!) path exists for functions that
//! are not class functions and as an independent check.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::scalar::Scalar;
use crate::sym::character::{symmetric_group, SymmetricGroup};
use crate::sym::partition::CycleType;
use crate::sym::permutation::{all_permutations, Permutation};

/// Largest degree for which dense k!-sized objects are built by default.
pub const DENSE_BOUND: usize = 7;

/// A function on S_k constant on conjugacy classes; values indexed by cycle
/// type in reverse-lexicographic order.
#[derive(Clone, PartialEq, Eq)]
pub struct ClassFunction<S: Scalar> {
    k: usize,
    values: Vec<S>,
}

impl<S: Scalar> ClassFunction<S> {
    pub fn from_values(k: usize, values: Vec<S>) -> Self {
        debug_assert_eq!(values.len(), symmetric_group(k).class_count());
        ClassFunction { k, values }
    }

    pub fn from_fn(k: usize, f: impl FnMut(&CycleType) -> S) -> Self {
        let g = symmetric_group(k);
        let values = g.classes().iter().map(f).collect();
        ClassFunction { k, values }
    }

    /// The Dirac delta at the identity permutation.
    pub fn dirac(k: usize) -> Self {
        let g = symmetric_group(k);
        let mut values = vec![S::zero(); g.class_count()];
        values[g.identity_index()] = S::one();
        ClassFunction { k, values }
    }

    /// The sign character as a class function.
    pub fn sign(k: usize) -> Self {
        ClassFunction::from_fn(k, |c| S::from_int(c.sign()))
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn group(&self) -> std::sync::Arc<SymmetricGroup> {
        symmetric_group(self.k)
    }

    pub fn values(&self) -> &[S] {
        &self.values
    }

    pub fn value_at_index(&self, class_idx: usize) -> &S {
        &self.values[class_idx]
    }

    pub fn value(&self, mu: &CycleType) -> Result<&S> {
        let g = symmetric_group(self.k);
        let idx = g.class_index(mu).ok_or(Error::DegreeMismatch {
            expected: self.k,
            got: mu.weight(),
        })?;
        Ok(&self.values[idx])
    }

    pub fn value_of(&self, sigma: &Permutation) -> Result<&S> {
        if sigma.degree() != self.k {
            return Err(Error::DegreeMismatch {
                expected: self.k,
                got: sigma.degree(),
            });
        }
        self.value(&sigma.cycle_type())
    }

    /// Pointwise product (Hadamard, not convolution).
    pub fn pointwise_mul(&self, other: &ClassFunction<S>) -> Result<ClassFunction<S>> {
        self.check_degree(other)?;
        Ok(ClassFunction {
            k: self.k,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a.clone() * b.clone())
                .collect(),
        })
    }

    pub fn scale(&self, c: &S) -> ClassFunction<S> {
        ClassFunction {
            k: self.k,
            values: self.values.iter().map(|v| v.clone() * c.clone()).collect(),
        }
    }

    fn check_degree(&self, other: &ClassFunction<S>) -> Result<()> {
        if self.k != other.k {
            return Err(Error::DegreeMismatch {
                expected: self.k,
                got: other.k,
            });
        }
        Ok(())
    }

    /// Fourier coefficients ⟨f, χ^λ⟩ = (1/k!) Σ_μ |C_μ| f(μ) χ^λ(μ), indexed
    /// like the partitions.
    pub fn to_character_basis(&self) -> Vec<S> {
        let g = symmetric_group(self.k);
        let inv_fact = S::from_int(g.factorial())
            .inverse()
            .expect("factorial is nonzero");
        (0..g.class_count())
            .map(|li| {
                let mut acc = S::zero();
                for ci in 0..g.class_count() {
                    let w = g.class_size(ci) * g.character_value(li, ci);
                    if w != 0 {
                        acc = acc + self.values[ci].clone() * S::from_int(w);
                    }
                }
                acc * inv_fact.clone()
            })
            .collect()
    }

    /// Rebuilds f(μ) = Σ_λ c_λ χ^λ(μ) from Fourier coefficients.
    pub fn from_character_basis(k: usize, coeffs: &[S]) -> Self {
        let g = symmetric_group(k);
        debug_assert_eq!(coeffs.len(), g.class_count());
        let values = (0..g.class_count())
            .map(|ci| {
                let mut acc = S::zero();
                for (li, c) in coeffs.iter().enumerate() {
                    let chi = g.character_value(li, ci);
                    if chi != 0 {
                        acc = acc + c.clone() * S::from_int(chi);
                    }
                }
                acc
            })
            .collect();
        ClassFunction { k, values }
    }

    /// Convolution via the character basis: coefficients multiply with the
    /// k!/f^λ normalization.
    pub fn convolve(&self, other: &ClassFunction<S>) -> Result<ClassFunction<S>> {
        self.check_degree(other)?;
        let g = symmetric_group(self.k);
        let a = self.to_character_basis();
        let b = other.to_character_basis();
        let fact = S::from_int(g.factorial());
        let coeffs: Vec<S> = (0..g.class_count())
            .map(|li| {
                let dim_inv = S::from_int(g.dimension(li))
                    .inverse()
                    .expect("dimension is positive");
                a[li].clone() * b[li].clone() * fact.clone() * dim_inv
            })
            .collect();
        Ok(ClassFunction::from_character_basis(self.k, &coeffs))
    }

    /// Convolution inverse: reciprocal in the character basis. Errors with
    /// the offending λ when some Fourier coefficient vanishes.
    pub fn convolution_inverse(&self) -> Result<ClassFunction<S>> {
        let g = symmetric_group(self.k);
        let coeffs = self.to_character_basis();
        let fact = S::from_int(g.factorial());
        let mut inv_coeffs = Vec::with_capacity(coeffs.len());
        for (li, c) in coeffs.iter().enumerate() {
            let c_inv = c.inverse().ok_or_else(|| Error::NotInvertible {
                lambda: g.classes()[li].to_string(),
            })?;
            // require coeff(g) with (k!/f^λ)·c·coeff(g) = f^λ/k!
            let dim = S::from_int(g.dimension(li));
            let fact_inv = fact.inverse().expect("factorial nonzero");
            inv_coeffs.push(dim.clone() * dim * fact_inv.clone() * fact_inv * c_inv);
        }
        Ok(ClassFunction::from_character_basis(self.k, &inv_coeffs))
    }

    /// Faithful embedding into the dense group algebra.
    pub fn lift_to_dense(&self) -> Result<GroupFunction<S>> {
        let perms = dense_permutations(self.k)?;
        let g = symmetric_group(self.k);
        let values = perms
            .iter()
            .map(|p| self.values[g.class_index(&p.cycle_type()).unwrap()].clone())
            .collect();
        Ok(GroupFunction {
            k: self.k,
            values,
        })
    }

    /// Serialization mirror: map cycle-type string → exact value string.
    pub fn to_json(&self) -> ClassFunctionJson {
        let g = symmetric_group(self.k);
        let values = g
            .classes()
            .iter()
            .zip(&self.values)
            .map(|(c, v)| (c.to_string(), v.to_string()))
            .collect();
        ClassFunctionJson {
            k: self.k,
            basis: "cycle-type".to_string(),
            domain: S::domain().to_string(),
            values,
        }
    }
}

impl<S: Scalar> fmt::Debug for ClassFunction<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = symmetric_group(self.k);
        let mut map = f.debug_map();
        for (c, v) in g.classes().iter().zip(&self.values) {
            map.entry(&c.to_string(), &v.to_string());
        }
        map.finish()
    }
}

/// JSON shape of a class function: exact values keyed by cycle type.
#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct ClassFunctionJson {
    pub k: usize,
    pub basis: String,
    #[serde(default)]
    pub domain: String,
    pub values: BTreeMap<String, String>,
}

impl ClassFunctionJson {
    pub fn into_class_function<S: Scalar>(
        self,
        parse: impl Fn(&str) -> Result<S>,
    ) -> Result<ClassFunction<S>> {
        let g = symmetric_group(self.k);
        let mut values = vec![S::zero(); g.class_count()];
        for (key, text) in &self.values {
            let ct: CycleType = key.parse()?;
            let idx = g.class_index(&ct).ok_or_else(|| {
                Error::Parse(format!("cycle type '{key}' does not partition {}", self.k))
            })?;
            values[idx] = parse(text)?;
        }
        Ok(ClassFunction::from_values(self.k, values))
    }
}

/// A dense function on S_k; values indexed by lexicographic one-line rank.
#[derive(Clone, PartialEq, Eq)]
pub struct GroupFunction<S: Scalar> {
    k: usize,
    values: Vec<S>,
}

/// All of S_k in lexicographic order, guarded by the dense bound.
pub fn dense_permutations(k: usize) -> Result<Vec<Permutation>> {
    if k > DENSE_BOUND {
        return Err(Error::DenseBound {
            k,
            bound: DENSE_BOUND,
        });
    }
    Ok(all_permutations(k))
}

impl<S: Scalar> GroupFunction<S> {
    /// Values in lexicographic one-line order; the length must be k!.
    pub fn from_values(k: usize, values: Vec<S>) -> Result<Self> {
        let expected: usize = (1..=k.max(1)).product();
        if values.len() != expected || k > DENSE_BOUND {
            return Err(Error::DenseBound {
                k,
                bound: DENSE_BOUND,
            });
        }
        Ok(GroupFunction { k, values })
    }

    pub fn from_fn(k: usize, f: impl FnMut(&Permutation) -> S) -> Result<Self> {
        let perms = dense_permutations(k)?;
        Ok(GroupFunction {
            k,
            values: perms.iter().map(f).collect(),
        })
    }

    pub fn dirac(k: usize) -> Result<Self> {
        let mut gf = GroupFunction::from_fn(k, |_| S::zero())?;
        let id = Permutation::identity(k);
        gf.values[id.lex_rank()] = S::one();
        Ok(gf)
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn values(&self) -> &[S] {
        &self.values
    }

    pub fn value_of(&self, p: &Permutation) -> &S {
        &self.values[p.lex_rank()]
    }

    /// Exact dense convolution (f*g)(π) = Σ_σ f(σ) g(σ⁻¹π).
    pub fn convolve(&self, other: &GroupFunction<S>) -> Result<GroupFunction<S>> {
        if self.k != other.k {
            return Err(Error::DegreeMismatch {
                expected: self.k,
                got: other.k,
            });
        }
        let perms = dense_permutations(self.k)?;
        let inverses: Vec<Permutation> = perms.iter().map(|p| p.inverse()).collect();
        let values: Vec<S> = perms
            .iter()
            .map(|pi| {
                let mut acc = S::zero();
                for (si, sigma_inv) in inverses.iter().enumerate() {
                    if self.values[si].is_zero() {
                        continue;
                    }
                    let target = sigma_inv.compose(pi);
                    let term = self.values[si].clone() * other.values[target.lex_rank()].clone();
                    acc = acc + term;
                }
                acc
            })
            .collect();
        Ok(GroupFunction { k: self.k, values })
    }

    /// Projection back to a class function; errors with a witness pair when
    /// two conjugate permutations carry different values.
    pub fn project_to_class(&self) -> Result<ClassFunction<S>> {
        let perms = dense_permutations(self.k)?;
        let g = symmetric_group(self.k);
        let mut per_class: Vec<Option<(usize, S)>> = vec![None; g.class_count()];
        for (pi, p) in perms.iter().enumerate() {
            let ci = g.class_index(&p.cycle_type()).unwrap();
            match &per_class[ci] {
                None => per_class[ci] = Some((pi, self.values[pi].clone())),
                Some((first, v)) => {
                    if *v != self.values[pi] {
                        return Err(Error::NotClassFunction {
                            a: perms[*first].to_string(),
                            b: p.to_string(),
                        });
                    }
                }
            }
        }
        Ok(ClassFunction::from_values(
            self.k,
            per_class
                .into_iter()
                .map(|o| o.expect("every class inhabited").1)
                .collect(),
        ))
    }
}

impl<S: Scalar> fmt::Debug for GroupFunction<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GroupFunction")
            .field("k", &self.k)
            .field("len", &self.values.len())
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{rat, ratio, Rat};
    use crate::sym::partition::Partition;

    fn cf(k: usize, vals: &[(&str, Rat)]) -> ClassFunction<Rat> {
        let g = symmetric_group(k);
        let mut values = vec![Rat::from_integer(0.into()); g.class_count()];
        for (key, v) in vals {
            let ct: Partition = key.parse().unwrap();
            values[g.class_index(&ct).unwrap()] = v.clone();
        }
        ClassFunction::from_values(k, values)
    }

    #[test]
    fn dirac_is_identity_for_convolution() {
        let f = cf(
            4,
            &[
                ("1,1,1,1", ratio(1, 3)),
                ("2,1,1", rat(5)),
                ("2,2", ratio(-2, 7)),
                ("3,1", rat(0)),
                ("4", ratio(9, 2)),
            ],
        );
        let d = ClassFunction::dirac(4);
        assert_eq!(f.convolve(&d).unwrap(), f);
        assert_eq!(d.convolve(&f).unwrap(), f);
    }

    #[test]
    fn character_orthogonality_under_convolution() {
        // χ^λ * χ^μ = δ_{λμ} (k!/f^λ) χ^λ for k = 3
        let g = symmetric_group(3);
        for li in 0..g.class_count() {
            for mi in 0..g.class_count() {
                let chi_l =
                    ClassFunction::from_fn(3, |c| rat(g.character_value(li, g.class_index(c).unwrap())));
                let chi_m =
                    ClassFunction::from_fn(3, |c| rat(g.character_value(mi, g.class_index(c).unwrap())));
                let conv = chi_l.convolve(&chi_m).unwrap();
                if li == mi {
                    let scale = ratio(g.factorial(), g.dimension(li));
                    assert_eq!(conv, chi_l.scale(&scale));
                } else {
                    assert!(conv.values().iter().all(|v| v.is_zero()));
                }
            }
        }
    }

    #[test]
    fn dense_convolution_matches_class_convolution() {
        let f = cf(
            4,
            &[
                ("1,1,1,1", ratio(1, 2)),
                ("2,1,1", rat(3)),
                ("2,2", ratio(5, 7)),
                ("3,1", rat(-1)),
                ("4", ratio(2, 9)),
            ],
        );
        let h = cf(
            4,
            &[
                ("1,1,1,1", rat(2)),
                ("2,1,1", ratio(-1, 5)),
                ("2,2", rat(0)),
                ("3,1", ratio(7, 3)),
                ("4", rat(1)),
            ],
        );
        let class_route = f.convolve(&h).unwrap();
        let dense_route = f
            .lift_to_dense()
            .unwrap()
            .convolve(&h.lift_to_dense().unwrap())
            .unwrap()
            .project_to_class()
            .unwrap();
        assert_eq!(class_route, dense_route);
    }

    #[test]
    fn dense_dirac_and_commutativity() {
        let d = GroupFunction::<Rat>::dirac(5).unwrap();
        let f = cf(
            5,
            &[
                ("1,1,1,1,1", rat(1)),
                ("2,1,1,1", rat(2)),
                ("2,2,1", rat(3)),
                ("3,1,1", rat(4)),
                ("3,2", rat(5)),
                ("4,1", rat(6)),
                ("5", rat(7)),
            ],
        )
        .lift_to_dense()
        .unwrap();
        assert_eq!(f.convolve(&d).unwrap(), f);
        assert_eq!(d.convolve(&f).unwrap(), f);

        // class functions commute even in the dense algebra
        let g = cf(
            3,
            &[("1,1,1", rat(1)), ("2,1", rat(-2)), ("3", ratio(1, 2))],
        )
        .lift_to_dense()
        .unwrap();
        let h = cf(3, &[("1,1,1", rat(4)), ("2,1", rat(1)), ("3", rat(3))])
            .lift_to_dense()
            .unwrap();
        assert_eq!(g.convolve(&h).unwrap(), h.convolve(&g).unwrap());
    }

    #[test]
    fn inverse_round_trip() {
        let f = cf(
            3,
            &[("1,1,1", rat(3)), ("2,1", ratio(1, 2)), ("3", rat(-1))],
        );
        let inv = f.convolution_inverse().unwrap();
        assert_eq!(f.convolve(&inv).unwrap(), ClassFunction::dirac(3));
        assert_eq!(inv.convolve(&f).unwrap(), ClassFunction::dirac(3));
        assert_eq!(
            ClassFunction::<Rat>::dirac(4).convolution_inverse().unwrap(),
            ClassFunction::dirac(4)
        );
    }

    #[test]
    fn projection_rejects_non_class_witness() {
        // f(π) = 1 iff π(1) = 1 is not a class function on S_3
        let gf = GroupFunction::from_fn(3, |p| rat((p.apply(1) == 1) as i64)).unwrap();
        match gf.project_to_class() {
            Err(Error::NotClassFunction { .. }) => {}
            other => panic!("expected witness error, got {other:?}"),
        }
        // the equal-degree kernel in its first argument is not class either:
        // two conjugate transpositions differ at fixed τ = e₂
        let tau = Permutation::identity(2);
        let kernel = GroupFunction::from_fn(3, |p| {
            crate::engine::ascension_kernel(p, &tau).unwrap()
        })
        .unwrap();
        match kernel.project_to_class() {
            Err(Error::NotClassFunction { a, b }) => {
                let pa: Permutation = a.parse().unwrap();
                let pb: Permutation = b.parse().unwrap();
                assert_eq!(pa.cycle_type(), pb.cycle_type());
            }
            other => panic!("expected witness error, got {other:?}"),
        }
    }

    #[test]
    fn sign_projects_from_dense() {
        let gf = GroupFunction::from_fn(3, |p| rat(p.sign())).unwrap();
        let cf = gf.project_to_class().unwrap();
        assert_eq!(cf, ClassFunction::sign(3));
    }

    #[test]
    fn json_round_trip() {
        let f = cf(
            3,
            &[("1,1,1", ratio(1, 3)), ("2,1", ratio(-1, 6)), ("3", rat(2))],
        );
        let json = serde_json::to_string(&f.to_json()).unwrap();
        let back: ClassFunctionJson = serde_json::from_str(&json).unwrap();
        let g = back
            .into_class_function(crate::exact::rational::parse_rat)
            .unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn dense_bound_enforced() {
        assert!(matches!(
            GroupFunction::<Rat>::dirac(8),
            Err(Error::DenseBound { k: 8, bound: 7 })
        ));
    }
}
