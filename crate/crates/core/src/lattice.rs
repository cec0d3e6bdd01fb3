//! Integer row lattices in Hermite normal form.

use num_integer::Integer;

use crate::error::{Error, Result};

/// The subgroup of ℤⁿ generated by a list of vectors, kept as a row-echelon
/// basis with positive pivots and reduced entries above each pivot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    n: usize,
    rows: Vec<Vec<i64>>,
    pivots: Vec<usize>,
}

impl Lattice {
    pub fn new(n: usize, gens: &[Vec<i64>]) -> Lattice {
        let mut rows: Vec<Vec<i64>> = gens.iter().filter(|g| g.iter().any(|&x| x != 0)).cloned().collect();
        for g in &rows {
            assert_eq!(g.len(), n, "generator length");
        }
        let mut basis = Vec::new();
        let mut pivots = Vec::new();
        for col in 0..n {
            // gcd-combine all rows into one with a nonzero entry in `col`
            loop {
                let mut nz: Vec<usize> = (0..rows.len()).filter(|&i| rows[i][col] != 0).collect();
                if nz.len() <= 1 {
                    break;
                }
                nz.sort_by_key(|&i| (rows[i][col].abs(), i));
                let a = nz[0];
                for &b in &nz[1..] {
                    let k = Integer::div_floor(&rows[b][col], &rows[a][col]);
                    let ra = rows[a].clone();
                    for (x, y) in rows[b].iter_mut().zip(&ra) {
                        *x -= k * y;
                    }
                }
                rows.retain(|r| r.iter().any(|&x| x != 0));
            }
            if let Some(i) = rows.iter().position(|r| r[col] != 0) {
                let mut r = rows.remove(i);
                if r[col] < 0 {
                    r.iter_mut().for_each(|x| *x = -*x);
                }
                basis.push(r);
                pivots.push(col);
            }
        }
        // reduce entries above pivots into [0, pivot)
        for j in 0..basis.len() {
            let (c, d) = (pivots[j], basis[j][pivots[j]]);
            for i in 0..j {
                let k = Integer::div_floor(&basis[i][c], &d);
                if k != 0 {
                    let rj = basis[j].clone();
                    for (x, y) in basis[i].iter_mut().zip(&rj) {
                        *x -= k * y;
                    }
                }
            }
        }
        Lattice {
            n,
            rows: basis,
            pivots,
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Vec<i64>] {
        &self.rows
    }

    /// Coordinates of `v` in the basis, or `None` when `v` is not in the lattice.
    pub fn coordinates(&self, v: &[i64]) -> Option<Vec<i64>> {
        debug_assert_eq!(v.len(), self.n);
        let mut rest = v.to_vec();
        let mut coords = Vec::with_capacity(self.rows.len());
        let mut col = 0;
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            if rest[col..pc].iter().any(|&x| x != 0) {
                return None;
            }
            let (k, r) = rest[pc].div_rem(&row[pc]);
            if r != 0 {
                return None;
            }
            for (x, y) in rest.iter_mut().zip(row) {
                *x -= k * y;
            }
            coords.push(k);
            col = pc + 1;
        }
        rest.iter().all(|&x| x == 0).then_some(coords)
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        self.coordinates(v).is_some()
    }

    /// All lattice points `v` with `lo <= v <= hi` componentwise, in
    /// lexicographic order of coordinates. More than `cap` points is an error.
    pub fn points_in_box(&self, lo: &[i64], hi: &[i64], cap: usize) -> Result<Vec<Vec<i64>>> {
        let mut out = Vec::new();
        let mut acc = vec![0i64; self.n];
        if self.fits(&acc, lo, hi, 0, self.pivots.first().copied().unwrap_or(self.n)) {
            self.enumerate(0, &mut acc, lo, hi, cap, &mut out)?;
        }
        Ok(out)
    }

    fn fits(&self, acc: &[i64], lo: &[i64], hi: &[i64], from: usize, to: usize) -> bool {
        (from..to).all(|c| lo[c] <= acc[c] && acc[c] <= hi[c])
    }

    fn enumerate(
        &self,
        j: usize,
        acc: &mut Vec<i64>,
        lo: &[i64],
        hi: &[i64],
        cap: usize,
        out: &mut Vec<Vec<i64>>,
    ) -> Result<()> {
        if j == self.rows.len() {
            if out.len() >= cap {
                return Err(Error::ResourceBound(format!(
                    "more than {cap} lattice points in box"
                )));
            }
            out.push(acc.clone());
            return Ok(());
        }
        let (row, pc) = (&self.rows[j], self.pivots[j]);
        let d = row[pc];
        let kmin = Integer::div_ceil(&(lo[pc] - acc[pc]), &d);
        let kmax = Integer::div_floor(&(hi[pc] - acc[pc]), &d);
        let next = self.pivots.get(j + 1).copied().unwrap_or(self.n);
        for k in kmin..=kmax {
            for (x, y) in acc.iter_mut().zip(row) {
                *x += k * y;
            }
            if self.fits(acc, lo, hi, pc + 1, next) {
                self.enumerate(j + 1, acc, lo, hi, cap, out)?;
            }
            for (x, y) in acc.iter_mut().zip(row) {
                *x -= k * y;
            }
        }
        Ok(())
    }
}
