//! Calogero-Moser points: quadruples `(X, Y, i, j)` with `[X, Y] + Id = i j`.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::free::Automorphism;
use crate::matrix::{dot, Matrix, RatMatrix};
use crate::rat::{rat, ratq, Rat};
use crate::ratfun::RatFun;
use crate::skew::{Chirality, Projection, SkewSum};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CMPoint {
    pub n: usize,
    pub x: RatMatrix,
    pub y: RatMatrix,
    /// column vector
    pub i: Vec<Rat>,
    /// row vector
    pub j: Vec<Rat>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LambdaTable {
    pub bound: usize,
    /// `values[l][k] = j Y^l X^k i`
    pub values: Vec<Vec<Rat>>,
}

impl LambdaTable {
    pub fn get(&self, l: usize, k: usize) -> &Rat {
        &self.values[l][k]
    }

    /// First differing entry, scanning `l` then `k`.
    pub fn first_difference(&self, o: &LambdaTable) -> Option<(usize, usize)> {
        let b = self.bound.min(o.bound);
        (0..=b)
            .flat_map(|l| (0..=b).map(move |k| (l, k)))
            .find(|&(l, k)| self.values[l][k] != o.values[l][k])
    }
}

/// Result of an equivalence test; `witness` names the first observed difference.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Equivalence {
    pub equivalent: bool,
    pub witness: Option<String>,
    /// `g` with `g X_p = X_q g` etc., when equivalent
    pub intertwiner: Option<RatMatrix>,
}

impl CMPoint {
    pub fn new(x: RatMatrix, y: RatMatrix, i: Vec<Rat>, j: Vec<Rat>) -> Result<Self> {
        let n = x.rows();
        if !x.is_square() || !y.is_square() || y.rows() != n || i.len() != n || j.len() != n {
            return Err(Error::Shape(format!(
                "point with X {}x{}, Y {}x{}, i of length {}, j of length {}",
                x.rows(),
                x.cols(),
                y.rows(),
                y.cols(),
                i.len(),
                j.len()
            )));
        }
        Ok(CMPoint { n, x, y, i, j })
    }

    pub fn empty() -> Self {
        CMPoint {
            n: 0,
            x: Matrix::zeros(0, 0),
            y: Matrix::zeros(0, 0),
            i: vec![],
            j: vec![],
        }
    }

    /// The one-point family `(a, b, 1, 1)`.
    pub fn single(a: Rat, b: Rat) -> Self {
        CMPoint {
            n: 1,
            x: Matrix::new(1, 1, vec![a]),
            y: Matrix::new(1, 1, vec![b]),
            i: vec![rat(1)],
            j: vec![rat(1)],
        }
    }

    pub fn zero_point() -> Self {
        Self::single(rat(0), rat(0))
    }

    /// `X = [[0,1],[0,0]], Y = [[0,0],[1,0]], i = (1,0), j = (2,0)`.
    pub fn nilpotent2() -> Self {
        CMPoint {
            n: 2,
            x: Matrix::from_ints(&[&[0, 1], &[0, 0]]),
            y: Matrix::from_ints(&[&[0, 0], &[1, 0]]),
            i: vec![rat(1), rat(0)],
            j: vec![rat(2), rat(0)],
        }
    }

    /// Diagonal `X` with distinct eigenvalues `a`, `Y_kk = b_k`, `Y_kl = 1/(a_k − a_l)`, `i = j = (1,..,1)`.
    pub fn diagonal(a: &[Rat], b: &[Rat]) -> Result<Self> {
        let n = a.len();
        if b.len() != n {
            return Err(Error::Shape("diagonal point needs as many b as a".into()));
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p] == a[q] {
                    return Err(Error::InvalidPoint(
                        "diagonal entries must be distinct".into(),
                    ));
                }
            }
        }
        let x = Matrix::from_fn(n, n, |r, c| if r == c { a[r].clone() } else { Rat::zero() });
        let y = Matrix::from_fn(n, n, |r, c| {
            if r == c {
                b[r].clone()
            } else {
                Rat::one() / (&a[r] - &a[c])
            }
        });
        Ok(CMPoint {
            n,
            x,
            y,
            i: vec![Rat::one(); n],
            j: vec![Rat::one(); n],
        })
    }

    pub fn i_col(&self) -> RatMatrix {
        Matrix::column(self.i.clone())
    }

    pub fn j_row(&self) -> RatMatrix {
        Matrix::row(self.j.clone())
    }

    /// `[X, Y] + Id − i j`.
    pub fn relation_defect(&self) -> RatMatrix {
        let comm = self.x.mul(&self.y).sub(&self.y.mul(&self.x));
        comm.add(&Matrix::identity(self.n))
            .sub(&self.i_col().mul(&self.j_row()))
    }

    pub fn validate(&self) -> bool {
        self.relation_defect().is_zero()
    }

    pub fn trace_ji(&self) -> Rat {
        dot(&self.j, &self.i)
    }

    /// `(g X g⁻¹, g Y g⁻¹, g i, j g⁻¹)`.
    pub fn conjugate(&self, g: &RatMatrix) -> Result<CMPoint> {
        let gi = g.inverse()?;
        CMPoint::new(
            g.mul(&self.x).mul(&gi),
            g.mul(&self.y).mul(&gi),
            g.apply(&self.i),
            self.j_row().mul(&gi).data().to_vec(),
        )
    }

    /// `Y^l X^k i`.
    pub fn word_vector(&self, l: usize, k: usize) -> Vec<Rat> {
        let mut v = self.i.clone();
        for _ in 0..k {
            v = self.x.apply(&v);
        }
        for _ in 0..l {
            v = self.y.apply(&v);
        }
        v
    }

    pub fn lambda_table(&self, bound: usize) -> LambdaTable {
        let mut values = vec![vec![Rat::zero(); bound + 1]; bound + 1];
        let mut xk = self.i.clone();
        for k in 0..=bound {
            let mut v = xk.clone();
            for row in values.iter_mut() {
                row[k] = dot(&self.j, &v);
                v = self.y.apply(&v);
            }
            xk = self.x.apply(&xk);
        }
        LambdaTable { bound, values }
    }

    /// Rank of `span{Y^l X^k i : l, k ≤ n}`.
    pub fn cyclic_rank(&self) -> usize {
        if self.n == 0 {
            return 0;
        }
        let cols: Vec<Vec<Rat>> = (0..=self.n)
            .flat_map(|l| (0..=self.n).map(move |k| (l, k)))
            .map(|(l, k)| self.word_vector(l, k))
            .collect();
        Matrix::from_fn(self.n, cols.len(), |r, c| cols[c][r].clone()).rank()
    }

    /// `κ = 1 − j (Y − y)⁻¹ (X − x)⁻¹ i` (YX) and `χ = 1 + j (X − x)⁻¹ (Y − y)⁻¹ i` (XY).
    pub fn kappa(&self) -> (SkewSum, SkewSum) {
        let n = self.n;
        let inv = |m: &RatMatrix| -> Matrix<RatFun> {
            m.minus_var()
                .map(|p| RatFun::from_poly(p.clone()))
                .inverse()
                .expect("X - t is invertible over k(t)")
        };
        let ym = inv(&self.y);
        let xm = inv(&self.x);
        let row_times = |m: &Matrix<RatFun>, b: usize| -> RatFun {
            (0..n).fold(RatFun::zero(), |acc, a| &acc + &m[(a, b)].scale(&self.j[a]))
        };
        let times_col = |m: &Matrix<RatFun>, b: usize| -> RatFun {
            (0..n).fold(RatFun::zero(), |acc, c| &acc + &m[(b, c)].scale(&self.i[c]))
        };
        let mut kt = vec![(RatFun::one(), RatFun::one())];
        let mut ct = vec![(RatFun::one(), RatFun::one())];
        for b in 0..n {
            kt.push((-row_times(&ym, b), times_col(&xm, b)));
            ct.push((row_times(&xm, b), times_col(&ym, b)));
        }
        (
            SkewSum::new(Chirality::YX, kt),
            SkewSum::new(Chirality::XY, ct),
        )
    }

    /// Checks `y^(B+1) (κ − 1) x^(B+1)` against `−λ_{lk}` at `y^(B−l) x^(B−k)`.
    pub fn kappa_series_check(&self, bound: usize) -> bool {
        let (kappa, _) = self.kappa();
        let tail = kappa.sub(&SkewSum::one(Chirality::YX)).expect("YX");
        let shifted = tail
            .lmul_left_factor(&RatFun::power(bound as i64 + 1))
            .rmul_right_factor(&RatFun::power(bound as i64 + 1));
        let poly = shifted
            .project(Projection::AcuteX)
            .and_then(|s| s.project(Projection::GraveY))
            .expect("YX projections");
        let mut coeff = vec![vec![Rat::zero(); bound + 1]; bound + 1];
        for (g, f) in poly.terms() {
            let (gp, fp) = (g.poly_part(), f.poly_part());
            for (a, ga) in gp.coeffs().iter().enumerate() {
                for (b, fb) in fp.coeffs().iter().enumerate() {
                    if a > bound || b > bound {
                        return false;
                    }
                    coeff[a][b] += ga * fb;
                }
            }
        }
        let table = self.lambda_table(bound);
        (0..=bound)
            .all(|l| (0..=bound).all(|k| coeff[bound - l][bound - k] == -table.get(l, k).clone()))
    }

    /// The point twisted by an automorphism: `(σ⁻¹(x), σ⁻¹(y))` evaluated at `(X, Y)`.
    pub fn act(&self, sigma: &Automorphism) -> Result<CMPoint> {
        let inv = sigma.inverse()?;
        let x = inv.image_x().eval_reversed(&self.x, &self.y);
        let y = inv.image_y().eval_reversed(&self.x, &self.y);
        let out = CMPoint::new(x, y, self.i.clone(), self.j.clone())?;
        if !out.validate() {
            return Err(Error::Invariant(
                "twisted point violates the rank-one relation".into(),
            ));
        }
        Ok(out)
    }
}

/// Decides whether two points lie in the same `GL_n` orbit.
pub fn equivalent(p: &CMPoint, q: &CMPoint) -> Result<Equivalence> {
    let no = |w: String| {
        Ok(Equivalence {
            equivalent: false,
            witness: Some(w),
            intertwiner: None,
        })
    };
    if p.n != q.n {
        return no("n".into());
    }
    let n = p.n;
    if n == 0 {
        return Ok(Equivalence {
            equivalent: true,
            witness: None,
            intertwiner: Some(Matrix::zeros(0, 0)),
        });
    }
    let (lp, lq) = (p.lambda_table(2 * n), q.lambda_table(2 * n));
    if let Some((l, k)) = lp.first_difference(&lq) {
        return no(format!("lambda_{l}{k}"));
    }
    // unknowns g[r][c] at index r*n + c
    let idx = |r: usize, c: usize| r * n + c;
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    let mut rhs: Vec<Rat> = Vec::new();
    for (mp, mq) in [(&p.x, &q.x), (&p.y, &q.y)] {
        // (g mp − mq g)[r][c] = Σ_s g[r][s] mp[s][c] − Σ_s mq[r][s] g[s][c]
        for r in 0..n {
            for c in 0..n {
                let mut row = vec![Rat::zero(); n * n];
                for s in 0..n {
                    row[idx(r, s)] += &mp[(s, c)];
                    row[idx(s, c)] -= &mq[(r, s)];
                }
                rows.push(row);
                rhs.push(Rat::zero());
            }
        }
    }
    for r in 0..n {
        let mut row = vec![Rat::zero(); n * n];
        for s in 0..n {
            row[idx(r, s)] = p.i[s].clone();
        }
        rows.push(row);
        rhs.push(q.i[r].clone());
    }
    for c in 0..n {
        let mut row = vec![Rat::zero(); n * n];
        for s in 0..n {
            row[idx(s, c)] = q.j[s].clone();
        }
        rows.push(row);
        rhs.push(p.j[c].clone());
    }
    let sys = Matrix::from_rows(rows)?;
    let Some(sol) = sys.solve(&rhs) else {
        return no("no_intertwiner".into());
    };
    if !sys.kernel().is_empty() {
        return Err(Error::Invariant(
            "intertwiner is not unique; the action is not free here".into(),
        ));
    }
    let g = Matrix::new(n, n, sol);
    if g.det().is_zero() {
        return no("singular_intertwiner".into());
    }
    Ok(Equivalence {
        equivalent: true,
        witness: None,
        intertwiner: Some(g),
    })
}

/// Random invertible `n × n` matrix with small integer entries (a nonzero rational scalar for `n = 1`).
pub fn random_gl(n: usize, rng: &mut impl Rng) -> RatMatrix {
    if n == 1 {
        let mut num = 0;
        while num == 0 {
            num = rng.gen_range(-5i64..=5);
        }
        return Matrix::new(1, 1, vec![ratq(num, rng.gen_range(1i64..=4))]);
    }
    loop {
        let entries = (0..n * n).map(|_| rat(rng.gen_range(-3i64..=3))).collect();
        let g = Matrix::new(n, n, entries);
        if !g.det().is_zero() {
            return g;
        }
    }
}

/// Named base points: the empty point, six one-point parameters, and the nilpotent pair.
pub fn base_points() -> Vec<(String, CMPoint)> {
    let mut out = vec![("n0".to_string(), CMPoint::empty())];
    for (a, b) in [(0, 0), (1, 0), (0, 1), (1, -2), (-2, 1)] {
        out.push((format!("n1({a},{b})"), CMPoint::single(rat(a), rat(b))));
    }
    out.push(("n1(1/2,3)".into(), CMPoint::single(ratq(1, 2), rat(3))));
    out.push(("n2_nilpotent".into(), CMPoint::nilpotent2()));
    out
}

/// Base points plus `conjugates` seeded random `GL_n` conjugates of each nonempty one.
pub fn catalog(seed: u64, conjugates: usize) -> Vec<(String, CMPoint)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for (name, p) in base_points() {
        let conj: Vec<_> = (0..if p.n > 0 { conjugates } else { 0 })
            .map(|c| {
                let g = random_gl(p.n, &mut rng);
                (format!("{name}^g{c}"), p.conjugate(&g).expect("invertible"))
            })
            .collect();
        out.push((name, p));
        out.extend(conj);
    }
    out
}
