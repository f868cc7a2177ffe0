//! Points `[F, G]` of the parameter space `P_{d,e}`, their gcd strata, the
//! multiplication maps `mu^u` and their differential, and finite-field
//! census counts.

use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{form_gcd, form_mul, resultant, BinaryForm, Field, Scalar};
use crate::ideal::check_type;
use crate::linalg::{self, Matrix};
use crate::subspace::Subspace;
use crate::{Error, Result};

/// A point of `P_{d,e}` in canonical form: `F` normalized, `G` reduced
/// against the echelon basis of `<F>_e` and normalized. Two pairs define
/// the same point exactly when their canonical forms are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ParamPoint {
    f: BinaryForm,
    g: BinaryForm,
}

/// Canonical representative of the class of `(F, G)`.
pub fn canonicalize(f: &BinaryForm, g: &BinaryForm) -> Result<ParamPoint> {
    let (d, e) = (f.degree(), g.degree());
    check_type(d, e)?;
    if f.is_zero() {
        return Err(Error::InvalidInput("F is zero".into()));
    }
    let f = f.normalize();
    let residue = Subspace::multiples(&f, e).reduce_form(g)?;
    if residue.is_zero() {
        return Err(Error::ZeroClass(format!("G is a multiple of F = {f}")));
    }
    Ok(ParamPoint { f, g: residue.normalize() })
}

impl ParamPoint {
    pub fn d(&self) -> usize {
        self.f.degree()
    }

    pub fn e(&self) -> usize {
        self.g.degree()
    }

    pub fn f(&self) -> &BinaryForm {
        &self.f
    }

    pub fn g(&self) -> &BinaryForm {
        &self.g
    }

    pub fn field(&self) -> Field {
        self.f.field()
    }

    /// `(g, u)` where `g` is the degree of `gcd(F, G)` and `u = d - g`; the
    /// point lies in `W^u` but not in `W^(u-1)`.
    pub fn stratum(&self) -> (usize, usize) {
        let g = form_gcd(&self.f, &self.g).expect("F is nonzero").degree();
        (g, self.d() - g)
    }

    /// Whether the point lies on the resultant divisor.
    pub fn in_delta(&self) -> bool {
        self.stratum().0 >= 1
    }
}

/// `mu^u(<A>, [B, C]) = [AB, AC]`.
pub fn mu(u: usize, a: &BinaryForm, bc: &ParamPoint) -> Result<ParamPoint> {
    if bc.d() != u {
        return Err(Error::DegreeMismatch(format!("[B,C] has type ({},{}) but u={u}", bc.d(), bc.e())));
    }
    if a.is_zero() {
        return Err(Error::InvalidInput("A is zero".into()));
    }
    canonicalize(&form_mul(a, &bc.f), &form_mul(a, &bc.g))
}

/// The differential `(H, I, J) -> (BH + AI, CH + AJ)` of `mu^u` at
/// `(A, B, C)`, written in coordinates.
///
/// The domain is `V_(d-u)/<A> + V_u/<B> + V_(e-d+u)/<C>`, with coordinates
/// the non-pivot monomials of each factor (dimension `e + u`). The codomain
/// is `V_d/<AB> + V_e/<AC>` with the pivot coordinate of each quotient
/// dropped (dimension `d + e`). `matrix` has one row per codomain
/// coordinate and one column per domain coordinate.
#[derive(Clone, Debug)]
pub struct Dmu {
    pub u: usize,
    pub d: usize,
    pub e: usize,
    pub matrix: Matrix,
    pub domain_dim: usize,
    pub codomain_dim: usize,
    pub rank: usize,
    pub kernel_dim: usize,
    pub corank: usize,
    /// A basis of the kernel in domain coordinates.
    pub kernel: Matrix,
    a: BinaryForm,
    b: BinaryForm,
    c: BinaryForm,
}

pub fn dmu_matrix(u: usize, a: &BinaryForm, b: &BinaryForm, c: &BinaryForm) -> Result<Dmu> {
    if b.degree() != u {
        return Err(Error::DegreeMismatch(format!("deg B = {} but u = {u}", b.degree())));
    }
    if a.is_zero() || b.is_zero() || c.is_zero() {
        return Err(Error::InvalidInput("A, B and C must be nonzero".into()));
    }
    let d = a.degree() + u;
    let e = a.degree() + c.degree();
    check_type(d, e)?;
    let field = a.field();
    let mut columns = Vec::new();
    for (slot, form) in [a, b, c].into_iter().enumerate() {
        let l = form.degree();
        let pivot = form.x1_valuation().expect("nonzero");
        for j in (0..=l).filter(|&j| j != pivot) {
            let m = BinaryForm::monomial(field, l, j);
            let zero = |deg: usize| BinaryForm::zero(field, deg);
            let (h, i, jj) = match slot {
                0 => (m, zero(u), zero(c.degree())),
                1 => (zero(a.degree()), m, zero(c.degree())),
                _ => (zero(a.degree()), zero(u), m),
            };
            columns.push(image_coords(a, b, c, &h, &i, &jj));
        }
    }
    let domain_dim = columns.len();
    let codomain_dim = d + e;
    let matrix = linalg::transpose(&columns, codomain_dim);
    let rank = linalg::rank(field, &matrix, domain_dim);
    let kernel = linalg::kernel(field, &matrix, domain_dim);
    Ok(Dmu {
        u,
        d,
        e,
        matrix,
        domain_dim,
        codomain_dim,
        rank,
        kernel_dim: domain_dim - rank,
        corank: codomain_dim - rank,
        kernel,
        a: a.clone(),
        b: b.clone(),
        c: c.clone(),
    })
}

/// Reduced codomain coordinates of `(BH + AI, CH + AJ)`.
fn image_coords(
    a: &BinaryForm,
    b: &BinaryForm,
    c: &BinaryForm,
    h: &BinaryForm,
    i: &BinaryForm,
    j: &BinaryForm,
) -> Vec<Scalar> {
    let first = form_mul(b, h).add(&form_mul(a, i));
    let second = form_mul(c, h).add(&form_mul(a, j));
    let mut coords = quotient_coords(&form_mul(a, b), &first);
    coords.extend(quotient_coords(&form_mul(a, c), &second));
    coords
}

/// Coordinates of `x` in `V_l / <p>` for `p` of degree `l`.
fn quotient_coords(p: &BinaryForm, x: &BinaryForm) -> Vec<Scalar> {
    let line = Subspace::span(p.field(), p.degree(), std::slice::from_ref(p)).expect("same degree");
    let pivot = line.pivots()[0];
    line.reduce(x.coeffs())
        .into_iter()
        .enumerate()
        .filter(|(k, _)| *k != pivot)
        .map(|(_, s)| s)
        .collect()
}

impl Dmu {
    /// Image of a tangent vector given by forms of degrees
    /// `(d-u, u, e-d+u)`.
    pub fn image(&self, h: &BinaryForm, i: &BinaryForm, j: &BinaryForm) -> Vec<Scalar> {
        image_coords(&self.a, &self.b, &self.c, h, i, j)
    }

    /// Domain coordinates of `(H, I, J)`, i.e. its class modulo
    /// `<A> + <B> + <C>`.
    pub fn domain_coords(&self, h: &BinaryForm, i: &BinaryForm, j: &BinaryForm) -> Vec<Scalar> {
        [(&self.a, h), (&self.b, i), (&self.c, j)]
            .into_iter()
            .flat_map(|(p, x)| quotient_coords(p, x))
            .collect()
    }

    /// Whether `(F mod <AB>, G mod <AC>)` lies in the image.
    pub fn image_contains(&self, f: &BinaryForm, g: &BinaryForm) -> bool {
        let mut target = quotient_coords(&form_mul(&self.a, &self.b), f);
        target.extend(quotient_coords(&form_mul(&self.a, &self.c), g));
        linalg::solve(self.a.field(), &self.matrix, self.domain_dim, &target).is_some()
    }
}

/// An explicit kernel vector when `K = gcd(A, B, C)` is nonconstant: with
/// `A = KA'`, `B = KB'`, `C = KC'` and `N` of degree `deg K` not
/// proportional to `K`, the triple `(A'N, -B'N, -C'N)` maps to zero.
pub fn common_factor_witness(
    a: &BinaryForm,
    b: &BinaryForm,
    c: &BinaryForm,
) -> Result<Option<(BinaryForm, BinaryForm, BinaryForm)>> {
    let k = form_gcd(&form_gcd(a, b)?, c)?;
    if k.degree() == 0 {
        return Ok(None);
    }
    let field = a.field();
    let n = (0..=k.degree())
        .map(|j| BinaryForm::monomial(field, k.degree(), j))
        .find(|m| Subspace::span(field, k.degree(), &[k.clone(), m.clone()]).unwrap().dim() == 2)
        .expect("V_k has dimension at least 2");
    let quot = |x: &BinaryForm| x.exact_div(&k).expect("K divides");
    Ok(Some((
        form_mul(&quot(a), &n),
        form_mul(&quot(b), &n).neg(),
        form_mul(&quot(c), &n).neg(),
    )))
}

/// Whether the degree `m` multiples of `A`, `B` and `C` together span `V_m`.
pub fn koszul_span_check(a: &BinaryForm, b: &BinaryForm, c: &BinaryForm, m: usize) -> bool {
    let field = a.field();
    let span = [a, b, c].into_iter().fold(Subspace::zero(field, m), |acc, x| {
        acc.sum(&Subspace::multiples(x, m)).expect("same degree")
    });
    span.is_full()
}

/// Every form of degree `k` whose first nonzero coefficient is 1, over a
/// finite field, in a fixed order.
pub fn normalized_forms(field: Field, k: usize) -> Vec<BinaryForm> {
    let elems = field.elements();
    let mut out = Vec::new();
    for lead in 0..=k {
        let free = k - lead;
        let total = (elems.len() as u64).pow(free as u32);
        for code in 0..total {
            let mut coeffs = vec![field.zero(); k + 1];
            coeffs[lead] = field.one();
            let mut rest = code;
            for slot in coeffs.iter_mut().skip(lead + 1) {
                *slot = elems[(rest % elems.len() as u64) as usize].clone();
                rest /= elems.len() as u64;
            }
            out.push(BinaryForm::new(field, coeffs));
        }
    }
    out
}

/// Points of `P^1` over a finite field as `(x0 : x1)` with the first
/// nonzero coordinate 1.
pub fn projective_line(field: Field) -> Vec<(Scalar, Scalar)> {
    let mut pts: Vec<_> = field.elements().into_iter().map(|x| (field.one(), x)).collect();
    pts.push((field.zero(), field.one()));
    pts
}

/// Result of comparing a divisor count with the expected binomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiberCount {
    pub d: usize,
    pub u: usize,
    pub v: usize,
    pub found: u64,
    pub expected: u64,
}

impl FiberCount {
    pub fn holds(&self) -> bool {
        self.found == self.expected
    }
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Builds a form with `d - u` distinct roots drawn from `P^1` over a finite
/// field and counts, by exhaustive enumeration, its normalized divisors of
/// degree `d - v`; the expected count is `binomial(d - u, d - v)`.
pub fn fiber_degree_check<R: Rng + ?Sized>(
    field: Field,
    d: usize,
    u: usize,
    v: usize,
    rng: &mut R,
) -> Result<FiberCount> {
    if !(1 <= u && u <= v && v < d) {
        return Err(Error::OutOfRange(format!("need 1 <= u <= v < d, got u={u}, v={v}, d={d}")));
    }
    let mut pts = projective_line(field);
    if pts.len() < d - u {
        return Err(Error::InvalidInput(format!("{field} has fewer than {} points on P^1", d - u)));
    }
    pts.shuffle(rng);
    let split = pts[..d - u].iter().fold(BinaryForm::constant(field.one()), |acc, (x0, x1)| {
        // the linear form vanishing at (x0 : x1)
        form_mul(&acc, &BinaryForm::new(field, vec![x1.clone(), -x0]))
    });
    let found = normalized_forms(field, d - v)
        .iter()
        .filter(|k| k.divides(&split))
        .count() as u64;
    Ok(FiberCount {
        d,
        u,
        v,
        found,
        expected: binomial((d - u) as u64, (d - v) as u64),
    })
}

/// Exhaustive stratum counts of `P_{d,e}` over a finite field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Census {
    pub field: String,
    pub d: usize,
    pub e: usize,
    pub q: u64,
    /// `by_u[u-1]` is the number of points in `W^u` minus `W^(u-1)`.
    pub by_u: Vec<u64>,
    pub total: u64,
    /// Points on the resultant divisor detected through the gcd.
    pub delta_by_gcd: u64,
    /// Points on the resultant divisor detected through the resultant.
    pub delta_by_resultant: u64,
    /// Points where the two tests disagree.
    pub disagreements: u64,
}

impl Census {
    /// `|W^u|`, the cumulative count up to stratum `u`.
    pub fn cumulative(&self, u: usize) -> u64 {
        self.by_u[..u].iter().sum()
    }

    /// `|W^u| / q^(d+u-1)` as a fraction `(num, den)`.
    pub fn density(&self, u: usize) -> (u64, u64) {
        (self.cumulative(u), self.q.pow((self.d + u - 1) as u32))
    }

    /// `[(q^(d+1) - 1)/(q - 1)] [(q^d - 1)/(q - 1)]`.
    pub fn expected_total(&self) -> u64 {
        let q = self.q;
        ((q.pow(self.d as u32 + 1) - 1) / (q - 1)) * ((q.pow(self.d as u32) - 1) / (q - 1))
    }

    /// `u,count,cumulative` rows with a header line.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("u,count,cumulative\n");
        for u in 1..=self.d {
            out.push_str(&format!("{u},{},{}\n", self.by_u[u - 1], self.cumulative(u)));
        }
        out
    }
}

#[derive(Default, Clone, Copy)]
struct Tally {
    delta_gcd: u64,
    delta_res: u64,
    disagree: u64,
}

/// Enumerates every point of `P_{d,e}` over a finite field: `F` runs over
/// normalized forms, `G` over normalized vectors supported on the
/// non-pivot coordinates of `<F>_e` (exactly the canonical
/// representatives). Work is split over `F` on `threads` workers and
/// merged by integer addition.
pub fn census(field: Field, d: usize, e: usize, threads: usize) -> Result<Census> {
    check_type(d, e)?;
    let q = field
        .order()
        .ok_or_else(|| Error::InvalidField("census needs a finite field".into()))?;
    let fs = normalized_forms(field, d);
    let per_f = |f: &BinaryForm| -> (Vec<u64>, Tally) {
        let free = Subspace::multiples(f, e).non_pivots();
        let mut by_u = vec![0u64; d];
        let mut tally = Tally::default();
        for gv in normalized_forms(field, free.len() - 1) {
            let mut coeffs = vec![field.zero(); e + 1];
            for (slot, c) in free.iter().zip(gv.coeffs()) {
                coeffs[*slot] = c.clone();
            }
            let g = BinaryForm::new(field, coeffs);
            let gdeg = form_gcd(f, &g).expect("F nonzero").degree();
            by_u[d - gdeg - 1] += 1;
            let by_gcd = gdeg >= 1;
            let by_res = resultant(f, &g).expect("positive degrees").is_zero();
            tally.delta_gcd += by_gcd as u64;
            tally.delta_res += by_res as u64;
            tally.disagree += (by_gcd != by_res) as u64;
        }
        (by_u, tally)
    };
    let merge = |(mut a, ta): (Vec<u64>, Tally), (b, tb): (Vec<u64>, Tally)| {
        for (x, y) in a.iter_mut().zip(b) {
            *x += y;
        }
        (
            a,
            Tally {
                delta_gcd: ta.delta_gcd + tb.delta_gcd,
                delta_res: ta.delta_res + tb.delta_res,
                disagree: ta.disagree + tb.disagree,
            },
        )
    };
    let identity = || (vec![0u64; d], Tally::default());
    let (by_u, tally) = if threads <= 1 {
        fs.iter().map(per_f).fold(identity(), merge)
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|err| Error::InvalidInput(format!("thread pool: {err}")))?;
        pool.install(|| fs.par_iter().map(per_f).reduce(identity, merge))
    };
    let total = by_u.iter().sum();
    Ok(Census {
        field: field.to_string(),
        d,
        e,
        q,
        by_u,
        total,
        delta_by_gcd: tally.delta_gcd,
        delta_by_resultant: tally.delta_res,
        disagreements: tally.disagree,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q(coeffs: &[i64]) -> BinaryForm {
        BinaryForm::from_i64s(Field::Rational, coeffs)
    }

    #[test]
    fn canonical_representatives() {
        assert!(matches!(canonicalize(&q(&[1, 0]), &q(&[0, 1, 0])), Err(Error::ZeroClass(_))));
        // (X0^2, X0^2 X1 + X1^3) reduces to X1^3
        let p = canonicalize(&q(&[1, 0, 0]), &q(&[0, 1, 0, 1])).unwrap();
        assert_eq!(p.g(), &q(&[0, 0, 0, 1]));
        let again = canonicalize(p.f(), p.g()).unwrap();
        assert_eq!(again, p);
    }

    #[test]
    fn strata_of_examples() {
        let p = canonicalize(&q(&[1, 0, 0]), &q(&[0, 0, 0, 1])).unwrap();
        assert_eq!(p.stratum(), (0, 2));
        let p = canonicalize(&q(&[0, 1, 0]), &q(&[1, 0, 0, 0])).unwrap();
        assert_eq!(p.stratum(), (1, 1));
        assert!(p.in_delta());
    }

    #[test]
    fn mu_examples() {
        let bc = canonicalize(&q(&[0, 1]), &q(&[1, 0, 0])).unwrap();
        let p = mu(1, &q(&[1, 0]), &bc).unwrap();
        assert_eq!(p, canonicalize(&q(&[0, 1, 0]), &q(&[1, 0, 0, 0])).unwrap());
        let fg = canonicalize(&q(&[1, 0, 1]), &q(&[0, 0, 0, 1])).unwrap();
        assert_eq!(mu(2, &q(&[3]), &fg).unwrap(), fg);
    }

    #[test]
    fn dmu_monomial_example() {
        let m = dmu_matrix(1, &q(&[1, 0]), &q(&[0, 1]), &q(&[1, 0, 0])).unwrap();
        assert_eq!((m.domain_dim, m.codomain_dim), (4, 5));
        assert_eq!((m.kernel_dim, m.corank), (0, 1));
    }

    #[test]
    fn planted_factor_gives_kernel() {
        // K = X0 + X1 planted into A, B, C
        let k = q(&[1, 1]);
        let a = form_mul(&k, &q(&[1, 2]));
        let b = form_mul(&k, &q(&[0, 1]));
        let c = form_mul(&k, &q(&[1, 0, -1]));
        let m = dmu_matrix(2, &a, &b, &c).unwrap();
        assert!(m.kernel_dim >= 1);
        let (h, i, j) = common_factor_witness(&a, &b, &c).unwrap().unwrap();
        assert!(m.image(&h, &i, &j).iter().all(Scalar::is_zero));
        assert!(m.domain_coords(&h, &i, &j).iter().any(|x| !x.is_zero()));
    }

    #[test]
    fn koszul_examples() {
        assert!(koszul_span_check(&q(&[1, 0]), &q(&[0, 1]), &q(&[1, 0, 0]), 4));
        assert!(!koszul_span_check(&q(&[1, 0]), &q(&[1, 0]), &q(&[1, 1, 0]), 4));
    }

    #[test]
    fn fiber_counts() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let f7 = Field::Prime(7);
        let c = fiber_degree_check(f7, 4, 1, 2, &mut rng).unwrap();
        assert_eq!((c.found, c.expected), (3, 3));
        assert_eq!(fiber_degree_check(f7, 4, 2, 2, &mut rng).unwrap().found, 1);
        assert_eq!(fiber_degree_check(f7, 5, 1, 4, &mut rng).unwrap().found, 4);
        assert_eq!(binomial(5, 2), 10);
    }

    #[test]
    fn census_gf3_total_and_agreement() {
        let f3 = Field::Prime(3);
        let c = census(f3, 2, 3, 1).unwrap();
        assert_eq!(c.total, c.expected_total());
        assert_eq!(c.disagreements, 0);
        assert_eq!(c.delta_by_gcd, c.delta_by_resultant);
        assert_eq!(census(f3, 2, 3, 3).unwrap(), c);
        assert_eq!(normalized_forms(f3, 2).len(), 13);
    }
}
