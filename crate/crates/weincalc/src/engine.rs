//! The Weingarten engine: the Gram function G_{k,n}, the Weingarten function
//! Wg_{k,n} by three independent routes, the pseudo-Weingarten W_{k,n} for
//! degrees above the dimension, the ascension/descension pair linking
//! dimensions n and n−1, and the equal-degree kernel that seeds the ladder.
//!
//! Route independence is the point: the character expansion, a dense linear
//! solve against the Gram matrix, and the dimension-recursive ladder must all
//! produce identical exact values.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::{dense_permutations, ClassFunction, GroupFunction};
use crate::error::{Error, Result};
use crate::exact::poly::Poly;
use crate::exact::ratfunc::RatFunc;
use crate::exact::rational::{binomial, rat, Rat};
use crate::exact::scalar::{rising, Scalar};
use crate::sym::character::symmetric_group;
use crate::sym::permutation::Permutation;

/// Independent computation routes for the Weingarten function.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WgRoute {
    /// Character expansion Wg = (1/k!) Σ_λ f^λ/(n↑λ) χ^λ.
    CharacterExpansion,
    /// Dense solve of G * w = δ over the exact group algebra.
    GramInverse,
    /// Dimension recursion down to n = k, then the equal-degree kernel.
    RecursiveAscension,
}

/// Base object used at n = k by the recursive route.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LadderBase {
    /// Equal-degree kernel chain from dimension 1 (the default).
    Kernel,
    /// Character expansion evaluated at n = k.
    Character,
}

/// G_{k,n}(π) = n^{κ(π)} as a class function; works in any scalar domain and
/// for any dimension value (including the boundary integers used to probe
/// invertibility).
pub fn gram_function<S: Scalar>(k: usize, n: &S) -> ClassFunction<S> {
    ClassFunction::from_fn(k, |mu| crate::exact::scalar::power(n, mu.len()))
}

/// Weingarten via the character expansion. Fails exactly when some content
/// product (n↑λ) vanishes, i.e. when G_{k,n} is not invertible.
pub fn weingarten_character<S: Scalar>(k: usize, n: &S) -> Result<ClassFunction<S>> {
    let g = symmetric_group(k);
    let fact_inv = S::from_int(g.factorial())
        .inverse()
        .expect("factorial nonzero");
    let mut coeffs = Vec::with_capacity(g.class_count());
    for (li, lam) in g.classes().iter().enumerate() {
        let cp = lam.content_product(n);
        let cp_inv = cp.inverse().ok_or_else(|| Error::NotInvertible {
            lambda: lam.to_string(),
        })?;
        coeffs.push(S::from_int(g.dimension(li)) * cp_inv * fact_inv.clone());
    }
    Ok(ClassFunction::from_character_basis(k, &coeffs))
}

/// The canonical pseudo-Weingarten W_{k,n}: the character sum restricted to
/// partitions of length ≤ n. Solves G*W*G = G and W*G*W = W, and coincides
/// with Wg_{k,n} when k ≤ n.
pub fn pseudo_weingarten(k: usize, n: i64) -> Result<ClassFunction<Rat>> {
    if k == 0 || n < 1 {
        return Err(Error::Domain(format!(
            "pseudo-Weingarten needs k >= 1 and n >= 1, got k={k}, n={n}"
        )));
    }
    let g = symmetric_group(k);
    let fact_inv = Scalar::inverse(&rat(g.factorial())).expect("factorial nonzero");
    let n_rat = rat(n);
    let coeffs: Vec<Rat> = g
        .classes()
        .iter()
        .enumerate()
        .map(|(li, lam)| {
            if lam.len() as i64 > n {
                return <Rat as Scalar>::zero();
            }
            let cp = lam.content_product(&n_rat);
            rat(g.dimension(li))
                * Scalar::inverse(&cp).expect("positive content product")
                * fact_inv.clone()
        })
        .collect();
    Ok(ClassFunction::from_character_basis(k, &coeffs))
}

/// Ascension function of degree k at dimension value `n`:
/// Raise(σ) = Σ_{t=0}^{fix σ} (−1)^{k−t} C(fix σ, t) / n^{↑(k−t)}.
pub fn ascension<S: Scalar>(k: usize, n: &S) -> Result<ClassFunction<S>> {
    // one inverse per exponent, shared across classes
    let mut inv_rising = Vec::with_capacity(k + 1);
    for m in 0..=k {
        let r = rising(n, m);
        inv_rising.push(r.inverse().ok_or_else(|| {
            Error::Domain(format!("ascension undefined: ({n}) rising {m} vanishes"))
        })?);
    }
    Ok(ClassFunction::from_fn(k, |mu| {
        let fix = mu.fixed_points();
        let mut acc = S::zero();
        for t in 0..=fix {
            let mut term =
                S::from_rat(&Rat::from_integer(binomial(fix, t))) * inv_rising[k - t].clone();
            if (k - t) % 2 == 1 {
                term = -term;
            }
            acc = acc + term;
        }
        acc
    }))
}

/// Descension function: Lower(σ) = sgn(σ) Σ_t C(fix σ, t) / n^{↓(k−t)}.
/// The falling factorial forces k ≤ n in the numeric domain.
pub fn descension<S: Scalar>(k: usize, n: &S) -> Result<ClassFunction<S>> {
    let mut inv_falling = Vec::with_capacity(k + 1);
    for m in 0..=k {
        let f = crate::exact::scalar::falling(n, m);
        inv_falling.push(f.inverse().ok_or_else(|| {
            Error::Domain(format!("descension needs k <= n: ({n}) falling {m} vanishes"))
        })?);
    }
    Ok(ClassFunction::from_fn(k, |mu| {
        let fix = mu.fixed_points();
        let mut acc = S::zero();
        for t in 0..=fix {
            acc = acc
                + S::from_rat(&Rat::from_integer(binomial(fix, t))) * inv_falling[k - t].clone();
        }
        if mu.sign() < 0 {
            acc = -acc;
        }
        acc
    }))
}

/// Ascension by the sphere-moment route: expand ∏(δ_{i,σ(i)} − x_i x̄_{σ(i)})
/// over subsets of the fixed-point set and integrate term by term. Serves as
/// an independent oracle for `ascension`.
pub fn ascension_via_sphere(k: usize, n: i64, sigma: &Permutation) -> Result<Rat> {
    if sigma.degree() != k {
        return Err(Error::DegreeMismatch {
            expected: k,
            got: sigma.degree(),
        });
    }
    if (k as i64) > n {
        return Err(Error::Domain(format!(
            "sphere route needs k <= n, got k={k}, n={n}"
        )));
    }
    let fix: Vec<usize> = (1..=k).filter(|&i| sigma.apply(i) == i).collect();
    let f = fix.len();
    let n_rat = rat(n);
    let mut acc = <Rat as Scalar>::zero();
    // subsets of Fix(σ) enumerated explicitly, as in the expansion
    for mask in 0u64..(1u64 << f) {
        let s = mask.count_ones() as usize;
        let sign = if (k + f - s).is_multiple_of(2) { 1 } else { -1 };
        let term = Scalar::inverse(&rising(&n_rat, s + k - f)).expect("positive rising factorial");
        acc += rat(sign) * term;
    }
    Ok(acc)
}

/// The equal-degree kernel a_n(π, τ) of the dimension-n to n−1 step, with
/// π ∈ S_n and τ ∈ S_{n−1}:
/// a_n(π,τ) = Σ_t (−1)^{n−t+1} C(fix(π,τ), t) / n^{↑(n−t)},
/// fix(π,τ) = |{i ≤ n−1 : π(τ(i)) = i}|.
pub fn ascension_kernel(pi: &Permutation, tau: &Permutation) -> Result<Rat> {
    let n = pi.degree();
    if n < 2 || tau.degree() != n - 1 {
        return Err(Error::DegreeMismatch {
            expected: n.saturating_sub(1),
            got: tau.degree(),
        });
    }
    let fix = kernel_fix(pi, tau);
    Ok(kernel_from_fix(n, fix))
}

fn kernel_fix(pi: &Permutation, tau: &Permutation) -> usize {
    (1..pi.degree())
        .filter(|&i| pi.apply(tau.apply(i)) == i)
        .count()
}

fn kernel_from_fix(n: usize, fix: usize) -> Rat {
    let n_rat = rat(n as i64);
    let mut acc = <Rat as Scalar>::zero();
    for t in 0..=fix {
        let mut term = Rat::from_integer(binomial(fix, t))
            * Scalar::inverse(&rising(&n_rat, n - t)).expect("positive rising factorial");
        if (n - t + 1) % 2 == 1 {
            term = -term;
        }
        acc += term;
    }
    acc
}

/// Wg_{m,m} built from dimension 1 by the equal-degree kernel:
/// Wg_{m,m}(π) = Σ_{τ ∈ S_{m−1}} a_m(π,τ) Wg_{m−1,m−1}(τ).
pub fn weingarten_equal_degree(m: usize) -> Result<ClassFunction<Rat>> {
    if m == 0 {
        return Err(Error::Domain("degree must be at least 1".into()));
    }
    let mut wg = ClassFunction::from_values(1, vec![<Rat as Scalar>::one()]);
    for dim in 2..=m {
        let lower = dense_permutations(dim - 1)?;
        let upper = dense_permutations(dim)?;
        let lower_vals: Vec<Rat> = lower
            .iter()
            .map(|t| wg.value_of(t).expect("degree matches").clone())
            .collect();
        // a_dim(π,τ) depends on (π,τ) only through fix(π,τ)
        let kernel_table: Vec<Rat> = (0..dim).map(|f| kernel_from_fix(dim, f)).collect();
        let values: Vec<Rat> = upper
            .iter()
            .map(|pi| {
                let mut acc = <Rat as Scalar>::zero();
                for (ti, tau) in lower.iter().enumerate() {
                    if Scalar::is_zero(&lower_vals[ti]) {
                        continue;
                    }
                    acc += &kernel_table[kernel_fix(pi, tau)] * &lower_vals[ti];
                }
                acc
            })
            .collect();
        // the sum is a class function; projection doubles as a consistency check
        wg = GroupFunction::from_values(dim, values)?.project_to_class()?;
    }
    Ok(wg)
}

/// The dimension-recursive route: descend Wg_{k,n} = Raise_{k,n} * Wg_{k,n−1}
/// strictly while n > k (the recursion is false at n = k), then take the
/// configured base object at n = k.
pub fn weingarten_recursive(k: usize, n: i64, base: LadderBase) -> Result<ClassFunction<Rat>> {
    check_wg_domain(k, n)?;
    let mut wg = match base {
        LadderBase::Kernel => weingarten_equal_degree(k)?,
        LadderBase::Character => weingarten_character(k, &rat(k as i64))?,
    };
    for m in (k as i64 + 1)..=n {
        let raise = ascension(k, &rat(m))?;
        wg = raise.convolve(&wg)?;
    }
    Ok(wg)
}

/// The full ladder: ascension steps over the equal-degree kernel chain.
pub fn weingarten_by_ladder(k: usize, n: i64) -> Result<ClassFunction<Rat>> {
    weingarten_recursive(k, n, LadderBase::Kernel)
}

fn check_wg_domain(k: usize, n: i64) -> Result<()> {
    if k == 0 || n < 1 {
        return Err(Error::Domain(format!(
            "Weingarten needs k >= 1 and n >= 1, got k={k}, n={n}"
        )));
    }
    if (k as i64) > n {
        return Err(Error::Domain(format!(
            "Wg_(k,n) needs k <= n (got k={k}, n={n}); use pseudo-wg for the canonical W_(k,n)"
        )));
    }
    Ok(())
}

/// Weingarten function at a concrete dimension by the chosen route.
pub fn weingarten_rat(k: usize, n: i64, route: WgRoute) -> Result<ClassFunction<Rat>> {
    check_wg_domain(k, n)?;
    match route {
        WgRoute::CharacterExpansion => weingarten_character(k, &rat(n)),
        WgRoute::GramInverse => weingarten_gram_numeric(k, n),
        WgRoute::RecursiveAscension => weingarten_recursive(k, n, LadderBase::Kernel),
    }
}

/// Weingarten function of the formal dimension symbol by the chosen route.
/// The recursive route applies the dimension recursion once, against the
/// character form shifted to n−1 (the equal-degree kernel is inherently
/// numeric, so a full symbolic ladder is not offered).
pub fn weingarten_sym(k: usize, route: WgRoute) -> Result<ClassFunction<RatFunc>> {
    if k == 0 {
        return Err(Error::Domain("degree must be at least 1".into()));
    }
    let n = RatFunc::var();
    match route {
        WgRoute::CharacterExpansion => weingarten_character(k, &n),
        WgRoute::GramInverse => weingarten_gram_symbolic(k),
        WgRoute::RecursiveAscension => {
            let raise = ascension(k, &n)?;
            let lower = shift_dimension(&weingarten_character(k, &n)?, -1);
            raise.convolve(&lower)
        }
    }
}

/// Substitutes n ↦ n + c in every value of a symbolic class function.
pub fn shift_dimension(f: &ClassFunction<RatFunc>, c: i64) -> ClassFunction<RatFunc> {
    ClassFunction::from_values(
        f.degree(),
        f.values()
            .iter()
            .map(|v| v.compose_linear(&rat(1), &rat(c)))
            .collect(),
    )
}

/// Substitutes n ↦ −n in every value of a symbolic class function.
pub fn negate_dimension(f: &ClassFunction<RatFunc>) -> ClassFunction<RatFunc> {
    ClassFunction::from_values(
        f.degree(),
        f.values()
            .iter()
            .map(|v| v.compose_linear(&rat(-1), &rat(0)))
            .collect(),
    )
}

// ---------------------------------------------------------------------------
// Gram-inverse route: fraction-free dense solve of G * w = δ.

fn gram_cycle_counts(k: usize) -> Result<Vec<Vec<usize>>> {
    let perms = dense_permutations(k)?;
    let inverses: Vec<Permutation> = perms.iter().map(|p| p.inverse()).collect();
    // cycles[pi][rho] = κ(π ρ⁻¹)
    Ok(perms
        .iter()
        .map(|pi| {
            inverses
                .iter()
                .map(|rho_inv| pi.compose(rho_inv).cycle_type().len())
                .collect()
        })
        .collect())
}

fn weingarten_gram_numeric(k: usize, n: i64) -> Result<ClassFunction<Rat>> {
    let cycles = gram_cycle_counts(k)?;
    let size = cycles.len();
    let base = BigInt::from(n);
    let matrix: Vec<Vec<BigInt>> = cycles
        .iter()
        .map(|row| row.iter().map(|&c| base.pow(c as u32)).collect())
        .collect();
    let mut rhs = vec![<BigInt as Zero>::zero(); size];
    rhs[Permutation::identity(k).lex_rank()] = <BigInt as One>::one();
    let solution = bareiss_solve(matrix, rhs, |v: &BigInt| Rat::from_integer(v.clone()))
        .ok_or_else(|| Error::Domain(format!("Gram matrix of S_{k} at n={n} is singular")))?;
    GroupFunction::from_values(k, solution)?.project_to_class()
}

fn weingarten_gram_symbolic(k: usize) -> Result<ClassFunction<RatFunc>> {
    let cycles = gram_cycle_counts(k)?;
    let size = cycles.len();
    let matrix: Vec<Vec<Poly>> = cycles
        .iter()
        .map(|row| {
            row.iter()
                .map(|&c| {
                    let mut coeffs = vec![<Rat as Scalar>::zero(); c + 1];
                    coeffs[c] = <Rat as Scalar>::one();
                    Poly::new(coeffs)
                })
                .collect()
        })
        .collect();
    let mut rhs = vec![Poly::zero(); size];
    rhs[Permutation::identity(k).lex_rank()] = Poly::one();
    let solution = bareiss_solve(matrix, rhs, |p: &Poly| RatFunc::from_poly(p.clone()))
        .ok_or_else(|| Error::Domain(format!("symbolic Gram matrix of S_{k} is singular")))?;
    GroupFunction::from_values(k, solution)?.project_to_class()
}

/// Entry arithmetic needed by fraction-free elimination.
trait BareissEntry: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn mul(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    /// Division known to be exact by the Bareiss identity.
    fn div_exact(&self, o: &Self) -> Self;
}

impl BareissEntry for BigInt {
    fn zero() -> Self {
        <BigInt as Zero>::zero()
    }
    fn one() -> Self {
        <BigInt as One>::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn div_exact(&self, o: &Self) -> Self {
        debug_assert!(Zero::is_zero(&(self % o)));
        self / o
    }
}

impl BareissEntry for Poly {
    fn zero() -> Self {
        Poly::zero()
    }
    fn one() -> Self {
        Poly::one()
    }
    fn is_zero(&self) -> bool {
        Poly::is_zero(self)
    }
    fn mul(&self, o: &Self) -> Self {
        self.clone() * o.clone()
    }
    fn sub(&self, o: &Self) -> Self {
        self.clone() - o.clone()
    }
    fn div_exact(&self, o: &Self) -> Self {
        Poly::div_exact(self, o)
    }
}

/// Fraction-free Gaussian elimination (Bareiss) over an integral domain,
/// followed by back substitution in the fraction field. Returns `None` when
/// the matrix is singular.
fn bareiss_solve<D: BareissEntry, F: Scalar>(
    mut a: Vec<Vec<D>>,
    mut b: Vec<D>,
    lift: impl Fn(&D) -> F,
) -> Option<Vec<F>> {
    let size = a.len();
    let mut prev = D::one();
    for col in 0..size {
        // pivot: first row with a nonzero entry in this column
        let pivot = (col..size).find(|&r| !a[r][col].is_zero())?;
        if pivot != col {
            a.swap(col, pivot);
            b.swap(col, pivot);
        }
        for r in col + 1..size {
            for c in col + 1..size {
                let t = a[col][col].mul(&a[r][c]).sub(&a[r][col].mul(&a[col][c]));
                a[r][c] = t.div_exact(&prev);
            }
            let t = a[col][col].mul(&b[r]).sub(&a[r][col].mul(&b[col]));
            b[r] = t.div_exact(&prev);
            a[r][col] = D::zero();
        }
        prev = a[col][col].clone();
    }
    // upper triangular with exact entries: back-substitute in the field
    let mut x = vec![F::zero(); size];
    for row in (0..size).rev() {
        let mut acc = lift(&b[row]);
        for c in row + 1..size {
            acc = acc - lift(&a[row][c]) * x[c].clone();
        }
        let d = lift(&a[row][row]).inverse()?;
        x[row] = acc * d;
    }
    Some(x)
}
