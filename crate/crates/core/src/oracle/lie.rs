use crate::error::Result;
use crate::formulas::check_n;

/// The Lie ring of `G_n`: `Z^{2n-1}` with basis `x_1..x_n, y_1..y_{n-1}`
/// (coordinates `0..n` and `n..2n-1`) and `[x_i, x_n] = y_i`.
#[derive(Clone, Debug)]
pub struct LieRing {
    n: usize,
    /// `table[a][b]` lists the non-zero coordinates of `[e_a, e_b]`.
    table: Vec<Vec<Vec<(usize, i64)>>>,
}

impl LieRing {
    pub fn new(n: usize) -> Result<Self> {
        check_n(n)?;
        let d = 2 * n - 1;
        let mut table = vec![vec![Vec::new(); d]; d];
        let xn = n - 1;
        for i in 0..n - 1 {
            let yi = n + i;
            table[i][xn].push((yi, 1));
            table[xn][i].push((yi, -1));
        }
        Ok(LieRing { n, table })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.table.len()
    }

    /// Structure constants `[e_a, e_b]` as a sparse vector.
    pub fn basis_bracket(&self, a: usize, b: usize) -> &[(usize, i64)] {
        &self.table[a][b]
    }

    pub fn bracket(&self, u: &[i128], v: &[i128]) -> Vec<i128> {
        let d = self.dim();
        let mut out = vec![0i128; d];
        for (a, &ua) in u.iter().enumerate() {
            if ua == 0 {
                continue;
            }
            for (b, &vb) in v.iter().enumerate() {
                if vb == 0 {
                    continue;
                }
                for &(c, k) in &self.table[a][b] {
                    out[c] += ua * vb * k as i128;
                }
            }
        }
        out
    }

    pub fn basis_vector(&self, a: usize) -> Vec<i128> {
        let mut e = vec![0; self.dim()];
        e[a] = 1;
        e
    }
}
