//! Canonical shapes of quadratic forms and the rank they expose.
//!
//! Every form over `F_q` is equivalent to
//!
//! ```text
//! x_1 x_2 + ... + x_{2m-1} x_{2m} + tail
//! ```
//!
//! with `tail` one of `0`, `c·x_{2m+1}^2` or `x_{2m+1}^2 + x_{2m+1} x_{2m+2} + μ x_{2m+2}^2`
//! (the last irreducible over `F_q`). In characteristic 2 the square tail
//! always has `c = 1`; in odd characteristic `c` is `1` or the least
//! non-square, since the discriminant class is an invariant there.
//!
//! The transform is built as an explicit basis: hyperbolic pairs first,
//! then the tail vectors, then the radical (where the form vanishes
//! identically together with its polar form).

use crate::field::{Elem, Field};
use crate::form::QuadraticForm;
use crate::linalg::Matrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Tail {
    Empty,
    /// `c·x²` with `c = 1` or (odd characteristic) the least non-square.
    Square(Elem),
    /// `x² + xy + μy²`, irreducible; μ is the least valid repr.
    Irreducible(Elem),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FormType {
    Zero,
    OddRank,
    EvenSplit,
    EvenNonSplit,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalForm {
    /// Number of hyperbolic planes.
    pub m: usize,
    pub tail: Tail,
    /// Columns are the new basis: `Q(T y)` is the canonical shape.
    pub transform: Matrix,
    pub rank: usize,
    pub type_tag: FormType,
}

impl CanonicalForm {
    /// The canonical shape as a form in `n` variables.
    pub fn shape(&self, field: &Field, n: usize) -> QuadraticForm {
        let mut q = QuadraticForm::zero(field, n);
        for k in 0..self.m {
            q.set_coeff(2 * k, 2 * k + 1, Elem::ONE);
        }
        let t = 2 * self.m;
        match self.tail {
            Tail::Empty => {}
            Tail::Square(c) => q.set_coeff(t, t, c),
            Tail::Irreducible(mu) => {
                q.set_coeff(t, t, Elem::ONE);
                q.set_coeff(t, t + 1, Elem::ONE);
                q.set_coeff(t + 1, t + 1, mu);
            }
        }
        q
    }
}

/// Least μ making `x² + xy + μy²` irreducible over `f`.
pub fn least_irreducible_mu(f: &Field) -> Elem {
    if f.is_char2() {
        return f.least_trace_one().expect("characteristic-2 field has a trace-one element");
    }
    let four = f.from_int(4);
    f.elements()
        .find(|&mu| {
            let disc = f.sub(Elem::ONE, f.mul(four, mu));
            !disc.is_zero() && !f.is_square(disc)
        })
        .expect("an irreducible monic quadratic exists")
}

struct Ctx<'a> {
    q: &'a QuadraticForm,
    f: &'a Field,
}

impl Ctx<'_> {
    fn val(&self, v: &[Elem]) -> Elem {
        self.q.eval(v)
    }
    fn b(&self, x: &[Elem], y: &[Elem]) -> Elem {
        self.q.bilinear(x, y)
    }
    fn axpy(&self, a: Elem, x: &[Elem], y: &[Elem]) -> Vec<Elem> {
        x.iter().zip(y).map(|(&xi, &yi)| self.f.add(self.f.mul(a, xi), yi)).collect()
    }
    fn scale(&self, a: Elem, x: &[Elem]) -> Vec<Elem> {
        x.iter().map(|&xi| self.f.mul(a, xi)).collect()
    }
    fn inv(&self, a: Elem) -> Elem {
        self.f.inv(a).expect("non-zero by construction")
    }

    /// Hyperbolic pair from an isotropic `v` and some `s` with `B(v, s) ≠ 0`.
    fn hyperbolic(&self, v: Vec<Elem>, s: &[Elem]) -> (Vec<Elem>, Vec<Elem>) {
        let w = self.scale(self.inv(self.b(&v, s)), s);
        let qw = self.val(&w);
        let w = self.axpy(self.f.neg(qw), &v, &w);
        debug_assert!(self.val(&v).is_zero() && self.val(&w).is_zero());
        debug_assert_eq!(self.b(&v, &w), Elem::ONE);
        (v, w)
    }

    /// Component of `x` orthogonal to the hyperbolic pair `(e, f)`.
    fn project_off(&self, x: &[Elem], e: &[Elem], g: &[Elem]) -> Vec<Elem> {
        let f = self.f;
        let t = self.axpy(f.neg(self.b(x, g)), e, x);
        self.axpy(f.neg(self.b(x, e)), g, &t)
    }
}

fn standard_basis(n: usize) -> Vec<Vec<Elem>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Elem::ONE } else { Elem::ZERO }).collect())
        .collect()
}

/// Reduces `q` to canonical shape.
pub fn canonicalize(q: &QuadraticForm) -> CanonicalForm {
    let f = q.field();
    let n = q.n();
    let ctx = Ctx { q, f };
    let (pairs, tail, tail_vecs, radical) = if f.is_char2() {
        reduce_char2(&ctx, n)
    } else {
        reduce_odd(&ctx, n)
    };
    let m = pairs.len();
    let mut cols = Vec::with_capacity(n);
    for (e, g) in pairs {
        cols.push(e);
        cols.push(g);
    }
    cols.extend(tail_vecs);
    cols.extend(radical);
    debug_assert_eq!(cols.len(), n);
    let transform = Matrix::from_columns(n, &cols);
    let rank = 2 * m
        + match tail {
            Tail::Empty => 0,
            Tail::Square(_) => 1,
            Tail::Irreducible(_) => 2,
        };
    let type_tag = match (rank, tail) {
        (0, _) => FormType::Zero,
        (_, Tail::Square(_)) => FormType::OddRank,
        (_, Tail::Empty) => FormType::EvenSplit,
        (_, Tail::Irreducible(_)) => FormType::EvenNonSplit,
    };
    CanonicalForm {
        m,
        tail,
        transform,
        rank,
        type_tag,
    }
}

/// Rank: the least number of variables `Q` can be written in.
pub fn rank(q: &QuadraticForm) -> usize {
    canonicalize(q).rank
}

type Reduction = (Vec<(Vec<Elem>, Vec<Elem>)>, Tail, Vec<Vec<Elem>>, Vec<Vec<Elem>>);

fn reduce_odd(ctx: &Ctx<'_>, n: usize) -> Reduction {
    let f = ctx.f;
    let two = f.from_int(2);
    // Orthogonal basis: anisotropic vectors first, radical left over.
    let mut rest = standard_basis(n);
    let mut diag: Vec<(Vec<Elem>, Elem)> = Vec::new();
    loop {
        let pick = rest.iter().position(|v| !ctx.val(v).is_zero()).or_else(|| {
            for i in 0..rest.len() {
                for j in i + 1..rest.len() {
                    if !ctx.b(&rest[i], &rest[j]).is_zero() {
                        let s = ctx.axpy(Elem::ONE, &rest[j], &rest[i]);
                        rest[i] = s;
                        return Some(i);
                    }
                }
            }
            None
        });
        let Some(i) = pick else { break };
        let v = rest.remove(i);
        let d = ctx.val(&v);
        let denom = ctx.inv(f.mul(two, d));
        for w in rest.iter_mut() {
            let c = f.mul(ctx.b(w, &v), denom);
            *w = ctx.axpy(f.neg(c), &v, w);
        }
        diag.push((v, d));
    }

    let mut pairs = Vec::new();
    loop {
        if diag.len() >= 2 {
            let (d1, d2) = (diag[0].1, diag[1].1);
            let ratio = f.neg(f.mul(d1, ctx.inv(d2)));
            if f.is_square(ratio) {
                let y = f.sqrt(ratio).expect("checked square");
                let v = ctx.axpy(y, &diag[1].0, &diag[0].0);
                let pair = ctx.hyperbolic(v, &diag[0].0);
                diag.drain(..2);
                pairs.push(pair);
                continue;
            }
        }
        if diag.len() < 3 {
            break;
        }
        let (b1, d1) = diag[0].clone();
        let (b2, d2) = diag[1].clone();
        let (b3, d3) = diag[2].clone();
        let inv_d2 = ctx.inv(d2);
        let (x, y) = f
            .elements()
            .find_map(|x| {
                let rhs = f.neg(f.mul(f.add(d3, f.mul(d1, f.square(x))), inv_d2));
                f.sqrt(rhs).ok().map(|y| (x, y))
            })
            .expect("ternary forms over finite fields are isotropic");
        let v = ctx.axpy(x, &b1, &ctx.axpy(y, &b2, &b3));
        let (e, g) = ctx.hyperbolic(v, &b3);
        let c = [&b1, &b2, &b3]
            .iter()
            .map(|b| ctx.project_off(b, &e, &g))
            .find(|c| !ctx.val(c).is_zero())
            .expect("complement of a plane in a regular 3-space is regular");
        let dc = ctx.val(&c);
        diag.drain(..3);
        diag.insert(0, (c, dc));
        pairs.push((e, g));
    }

    let (tail, tail_vecs) = match diag.len() {
        0 => (Tail::Empty, vec![]),
        1 => {
            let (v, d) = diag.pop().unwrap();
            let c = if f.is_square(d) {
                Elem::ONE
            } else {
                f.least_nonsquare().expect("odd field")
            };
            let s = f.sqrt(f.mul(c, ctx.inv(d))).expect("same square class");
            (Tail::Square(c), vec![ctx.scale(s, &v)])
        }
        _ => {
            let (b1, d1) = diag[0].clone();
            let (b2, d2) = diag[1].clone();
            let inv_d2 = ctx.inv(d2);
            let u1 = f
                .elements()
                .find_map(|x| {
                    let rhs = f.mul(f.sub(Elem::ONE, f.mul(d1, f.square(x))), inv_d2);
                    f.sqrt(rhs).ok().map(|y| ctx.axpy(x, &b1, &ctx.scale(y, &b2)))
                })
                .expect("regular binary forms represent 1");
            let half = ctx.inv(two);
            let c = [&b1, &b2]
                .iter()
                .map(|b| ctx.axpy(f.neg(f.mul(ctx.b(b, &u1), half)), &u1, b))
                .find(|c| !ctx.val(c).is_zero())
                .expect("orthogonal complement of u1 is regular");
            let mu = least_irreducible_mu(f);
            let quarter = f.mul(half, half);
            let beta2 = f.mul(f.sub(mu, quarter), ctx.inv(ctx.val(&c)));
            let beta = f.sqrt(beta2).expect("anisotropic binary forms share one class");
            let u2 = ctx.axpy(half, &u1, &ctx.scale(beta, &c));
            (Tail::Irreducible(mu), vec![u1, u2])
        }
    };
    (pairs, tail, tail_vecs, rest)
}

enum Plane {
    Hyperbolic(Vec<Elem>, Vec<Elem>),
    /// `Q(e) = 1`, `Q(f) = μ₀`, `B(e, f) = 1`.
    Anisotropic(Vec<Elem>, Vec<Elem>),
}

/// Normal form of a plane with `B(e, f) = 1` in characteristic 2.
fn normalize_plane(ctx: &Ctx<'_>, e: Vec<Elem>, g: Vec<Elem>) -> Plane {
    let f = ctx.f;
    let a = ctx.val(&e);
    let c = ctx.val(&g);
    if a.is_zero() {
        return Plane::Hyperbolic(e.clone(), ctx.axpy(c, &e, &g));
    }
    if c.is_zero() {
        return Plane::Hyperbolic(g.clone(), ctx.axpy(a, &g, &e));
    }
    let sa = f.sqrt(a).expect("char 2");
    let e1 = ctx.scale(ctx.inv(sa), &e);
    let g1 = ctx.scale(sa, &g);
    let mu = f.mul(a, c);
    match f.solve_artin_schreier(mu) {
        Some(rho) => {
            let v = ctx.axpy(rho, &e1, &g1);
            let w = ctx.axpy(Elem::ONE, &v, &e1);
            Plane::Hyperbolic(v, w)
        }
        None => {
            let mu0 = least_irreducible_mu(f);
            let rho = f
                .solve_artin_schreier(f.add(mu, mu0))
                .expect("equal traces differ by ρ² + ρ");
            let g2 = ctx.axpy(rho, &e1, &g1);
            Plane::Anisotropic(e1, g2)
        }
    }
}

fn reduce_char2(ctx: &Ctx<'_>, n: usize) -> Reduction {
    let f = ctx.f;
    let mut rest = standard_basis(n);
    let mut planes = Vec::new();
    'outer: loop {
        for i in 0..rest.len() {
            for j in i + 1..rest.len() {
                let bij = ctx.b(&rest[i], &rest[j]);
                if bij.is_zero() {
                    continue;
                }
                let g = ctx.scale(ctx.inv(bij), &rest[j]);
                let e = rest[i].clone();
                rest.remove(j);
                rest.remove(i);
                for x in rest.iter_mut() {
                    *x = ctx.project_off(x, &e, &g);
                }
                planes.push((e, g));
                continue 'outer;
            }
        }
        break;
    }

    // What remains is orthogonal to everything: Q is a square of a linear form there.
    let mut square = None;
    if let Some(k) = rest.iter().position(|v| !ctx.val(v).is_zero()) {
        let s0 = rest.remove(k);
        let d0 = ctx.val(&s0);
        let inv_d0 = ctx.inv(d0);
        for v in rest.iter_mut() {
            let dv = ctx.val(v);
            if !dv.is_zero() {
                let l = f.sqrt(f.mul(dv, inv_d0)).expect("char 2");
                *v = ctx.axpy(l, &s0, v);
            }
        }
        let s = ctx.scale(ctx.inv(f.sqrt(d0).expect("char 2")), &s0);
        square = Some(s);
    }

    let mut pairs = Vec::new();
    let mut aniso: Vec<(Vec<Elem>, Vec<Elem>)> = Vec::new();
    for (e, g) in planes {
        match normalize_plane(ctx, e, g) {
            Plane::Hyperbolic(v, w) => pairs.push((v, w)),
            Plane::Anisotropic(e1, g1) => aniso.push((e1, g1)),
        }
    }

    if let Some(s) = &square {
        for (e1, g1) in aniso.drain(..) {
            let e2 = ctx.axpy(Elem::ONE, s, &e1);
            match normalize_plane(ctx, e2, g1) {
                Plane::Hyperbolic(v, w) => pairs.push((v, w)),
                Plane::Anisotropic(..) => unreachable!("isotropic vector already present"),
            }
        }
    }

    let mu0 = least_irreducible_mu(f);
    while aniso.len() >= 2 {
        let (e1, g1) = aniso.remove(0);
        let (e2, g2) = aniso.remove(0);
        let v = ctx.axpy(Elem::ONE, &e1, &e2);
        let w = ctx.axpy(mu0, &v, &g1);
        let proj: Vec<Vec<Elem>> = [&e1, &g1, &e2, &g2]
            .iter()
            .map(|x| ctx.project_off(x, &v, &w))
            .collect();
        let c1 = proj.iter().find(|c| c.iter().any(|x| !x.is_zero())).unwrap().clone();
        let c2 = proj
            .iter()
            .find(|c| !ctx.b(&c1, c).is_zero())
            .expect("complement plane is regular")
            .clone();
        let c2 = ctx.scale(ctx.inv(ctx.b(&c1, &c2)), &c2);
        pairs.push((v, w));
        match normalize_plane(ctx, c1, c2) {
            Plane::Hyperbolic(a, b) => pairs.push((a, b)),
            Plane::Anisotropic(..) => unreachable!("two anisotropic planes sum to split planes"),
        }
    }

    let (tail, tail_vecs) = if let Some(s) = square {
        (Tail::Square(Elem::ONE), vec![s])
    } else if let Some((e1, g1)) = aniso.pop() {
        (Tail::Irreducible(mu0), vec![e1, g1])
    } else {
        (Tail::Empty, vec![])
    };
    (pairs, tail, tail_vecs, rest)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::form::ElementaryTransform;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn gf(q: u64) -> Field {
        Field::of_order(q).unwrap()
    }

    fn form(f: &Field, n: usize, terms: &[(usize, usize, u32)]) -> QuadraticForm {
        let t: Vec<_> = terms.iter().map(|&(i, j, c)| (i, j, Elem(c))).collect();
        QuadraticForm::from_terms(f, n, &t).unwrap()
    }

    fn check(q: &QuadraticForm) -> CanonicalForm {
        let c = canonicalize(q);
        let shape = q.change_of_variables(&c.transform).expect("transform is invertible");
        assert_eq!(shape, c.shape(q.field(), q.n()), "form {q:?}");
        if let Tail::Irreducible(mu) = c.tail {
            let f = q.field();
            if f.is_char2() {
                assert_eq!(f.trace(mu), Elem::ONE);
            } else {
                assert!(!f.is_square(f.sub(Elem::ONE, f.mul(f.from_int(4), mu))));
            }
        }
        c
    }

    #[test]
    fn zero_form() {
        let c = check(&QuadraticForm::zero(&gf(5), 3));
        assert_eq!((c.m, c.tail, c.rank, c.type_tag), (0, Tail::Empty, 0, FormType::Zero));
    }

    #[test]
    fn char2_examples() {
        let f2 = gf(2);
        let c = check(&form(&f2, 3, &[(0, 1, 1), (2, 2, 1)]));
        assert_eq!((c.m, c.tail, c.rank), (1, Tail::Square(Elem::ONE), 3));
        let c = check(&form(&f2, 2, &[(0, 0, 1), (1, 1, 1)]));
        assert_eq!(c.rank, 1);
        let c = check(&form(&f2, 2, &[(0, 0, 1), (0, 1, 1), (1, 1, 1)]));
        assert_eq!((c.rank, c.type_tag), (2, FormType::EvenNonSplit));
        let c = check(&form(&f2, 2, &[(0, 0, 1), (0, 1, 1)]));
        assert_eq!((c.rank, c.type_tag), (2, FormType::EvenSplit));
    }

    #[test]
    fn odd_examples() {
        let f3 = gf(3);
        let c = check(&form(&f3, 2, &[(0, 0, 1), (1, 1, 1)]));
        assert_eq!((c.rank, c.type_tag), (2, FormType::EvenNonSplit));
        let c = check(&form(&f3, 2, &[(0, 1, 1)]));
        assert_eq!((c.rank, c.type_tag), (2, FormType::EvenSplit));
        let c = check(&form(&f3, 3, &[(0, 0, 2)]));
        assert_eq!((c.rank, c.tail), (1, Tail::Square(Elem(2))));
        // Degenerate binary with discriminant zero: x² + 2xy + y² = (x + y)².
        let c = check(&form(&f3, 2, &[(0, 0, 1), (0, 1, 2), (1, 1, 1)]));
        assert_eq!(c.rank, 1);
    }

    #[test]
    fn random_forms_reach_shape() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for q in [2u64, 3, 4, 5, 7, 8, 9, 16, 25, 27] {
            let f = gf(q);
            for _ in 0..150 {
                let n = rng.random_range(1..=6);
                let mut form = QuadraticForm::zero(&f, n);
                for i in 0..n {
                    for j in i..n {
                        if rng.random_bool(0.5) {
                            form.set_coeff(i, j, Elem(rng.random_range(0..f.q())));
                        }
                    }
                }
                let c = check(&form);
                let t = ElementaryTransform::Transvection(0, n - 1, Elem(1));
                if n > 1 {
                    assert_eq!(rank(&form.apply(t).unwrap()), c.rank);
                }
            }
        }
    }
}
