//! Incremental row reduction over ℚ, used for Krylov sequences.

use num_rational::BigRational;
use num_traits::{One, Zero};

struct Row {
    pivot: usize,
    vec: Vec<BigRational>,
    combo: Vec<BigRational>,
}

/// Keeps a reduced basis of inserted vectors and, for each basis row, its
/// expression in terms of the inserted vectors.
pub struct Echelon {
    dim: usize,
    rows: Vec<Row>,
    inserted: usize,
}

impl Echelon {
    pub fn new(dim: usize) -> Self {
        Echelon { dim, rows: vec![], inserted: 0 }
    }

    pub fn len(&self) -> usize {
        self.inserted
    }

    pub fn is_empty(&self) -> bool {
        self.inserted == 0
    }

    fn reduce(&self, v: &mut [BigRational], combo: &mut Vec<BigRational>) {
        for row in &self.rows {
            if v[row.pivot].is_zero() {
                continue;
            }
            let c = v[row.pivot].clone();
            for (x, y) in v.iter_mut().zip(&row.vec) {
                if !y.is_zero() {
                    *x -= &c * y;
                }
            }
            if combo.len() < row.combo.len() {
                combo.resize(row.combo.len(), BigRational::zero());
            }
            for (x, y) in combo.iter_mut().zip(&row.combo) {
                if !y.is_zero() {
                    *x -= &c * y;
                }
            }
        }
    }

    /// Insert `v`. If it depends on the earlier vectors, returns `c` with
    /// `v = sum c_k v_k` and does not insert it.
    pub fn insert(&mut self, v: Vec<BigRational>) -> Option<Vec<BigRational>> {
        assert_eq!(v.len(), self.dim);
        let mut v = v;
        let mut combo = vec![BigRational::zero(); self.inserted + 1];
        combo[self.inserted] = BigRational::one();
        self.reduce(&mut v, &mut combo);
        match v.iter().position(|x| !x.is_zero()) {
            None => {
                // 0 = combo . (v_0..v_k) with coefficient 1 on the new vector
                combo.truncate(self.inserted + 1);
                combo.resize(self.inserted + 1, BigRational::zero());
                let dep = combo[..self.inserted].iter().map(|c| -c).collect();
                Some(dep)
            }
            Some(p) => {
                let inv = v[p].recip();
                for x in v.iter_mut() {
                    *x *= &inv;
                }
                for x in combo.iter_mut() {
                    *x *= &inv;
                }
                self.rows.push(Row { pivot: p, vec: v, combo });
                self.inserted += 1;
                None
            }
        }
    }

    /// Express `t` in terms of the inserted vectors, if it lies in their span.
    pub fn express(&self, t: Vec<BigRational>) -> Option<Vec<BigRational>> {
        let mut t = t;
        let mut combo = vec![BigRational::zero(); self.inserted];
        self.reduce(&mut t, &mut combo);
        if t.iter().any(|x| !x.is_zero()) {
            return None;
        }
        Some(combo.into_iter().map(|c| -c).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    #[test]
    fn dependency_found() {
        let mut e = Echelon::new(3);
        assert!(e.insert(vec![q(1), q(0), q(1)]).is_none());
        assert!(e.insert(vec![q(0), q(1), q(1)]).is_none());
        let dep = e.insert(vec![q(2), q(3), q(5)]).unwrap();
        assert_eq!(dep, vec![q(2), q(3)]);
        assert_eq!(e.express(vec![q(1), q(1), q(2)]).unwrap(), vec![q(1), q(1)]);
        assert!(e.express(vec![q(1), q(0), q(0)]).is_none());
    }
}
