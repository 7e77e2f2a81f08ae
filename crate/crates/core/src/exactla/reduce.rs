use super::scalar::{Field, Scalar};

/// Incremental Gauss-Jordan elimination.
///
/// Rows are pushed one at a time; the stored rows are always the nonzero rows
/// of the reduced row echelon form of everything pushed so far, sorted by
/// pivot column. Large homogeneous systems with many redundant constraints
/// (cocycle conditions over all pairs of elements) stay cheap because a
/// redundant row costs one reduction pass and is then dropped.
#[derive(Clone, Debug)]
pub struct RowReducer {
    field: Field,
    width: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl RowReducer {
    pub fn new(field: Field, width: usize) -> Self {
        RowReducer {
            field,
            width,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Nonzero RREF rows, sorted by pivot.
    pub fn rows(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<Vec<Scalar>> {
        self.rows
    }

    /// Remainder of `row` after elimination against the stored pivots.
    pub fn reduce(&self, row: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(row.len(), self.width, "row width mismatch");
        let mut r = row.to_vec();
        self.reduce_in_place(&mut r);
        r
    }

    fn reduce_in_place(&self, r: &mut [Scalar]) {
        for (prow, &pc) in self.rows.iter().zip(&self.pivots) {
            if r[pc].is_zero() {
                continue;
            }
            let coef = r[pc].clone();
            for (c, pv) in prow.iter().enumerate().skip(pc) {
                if !pv.is_zero() {
                    r[c] = &r[c] - &(&coef * pv);
                }
            }
        }
    }

    /// True when `row` lies in the span of the pushed rows.
    pub fn contains(&self, row: &[Scalar]) -> bool {
        self.reduce(row).iter().all(Scalar::is_zero)
    }

    /// Adds a row; returns whether the rank grew.
    pub fn push(&mut self, row: Vec<Scalar>) -> bool {
        assert_eq!(row.len(), self.width, "row width mismatch");
        let mut r = row;
        self.reduce_in_place(&mut r);
        let Some(pc) = r.iter().position(|v| !v.is_zero()) else {
            return false;
        };
        let inv = r[pc].inv().expect("nonzero pivot");
        for v in r.iter_mut().skip(pc) {
            if !v.is_zero() {
                *v = &*v * &inv;
            }
        }
        for prow in self.rows.iter_mut() {
            if prow[pc].is_zero() {
                continue;
            }
            let coef = prow[pc].clone();
            for (c, nv) in r.iter().enumerate().skip(pc) {
                if !nv.is_zero() {
                    prow[c] = &prow[c] - &(&coef * nv);
                }
            }
        }
        let at = self.pivots.partition_point(|&p| p < pc);
        self.pivots.insert(at, pc);
        self.rows.insert(at, r);
        true
    }

    /// Adds a row given as `(column, coefficient)` pairs; repeated columns accumulate.
    pub fn push_sparse(&mut self, entries: &[(usize, Scalar)]) -> bool {
        let mut row = vec![self.field.zero(); self.width];
        for (c, v) in entries {
            row[*c] = &row[*c] + v;
        }
        self.push(row)
    }

    /// Basis of the solution space of the homogeneous system whose rows were pushed.
    ///
    /// One vector per free column `f`, with a 1 in position `f`.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let mut is_pivot = vec![false; self.width];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        let zero = self.field.zero();
        (0..self.width)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = vec![zero.clone(); self.width];
                v[f] = self.field.one();
                for (prow, &pc) in self.rows.iter().zip(&self.pivots) {
                    if !prow[f].is_zero() {
                        v[pc] = -&prow[f];
                    }
                }
                v
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(f: Field, xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| f.from_i64(x)).collect()
    }

    #[test]
    fn redundant_rows_are_dropped() {
        let f = Field::Rational;
        let mut r = RowReducer::new(f, 3);
        assert!(r.push(row(f, &[1, 2, 3])));
        assert!(!r.push(row(f, &[2, 4, 6])));
        assert!(r.push(row(f, &[0, 1, 1])));
        assert_eq!(r.rank(), 2);
        assert_eq!(r.pivots(), &[0, 1]);
        assert_eq!(r.rows()[0], row(f, &[1, 0, 1]));
        let k = r.kernel_basis();
        assert_eq!(k, vec![row(f, &[-1, -1, 1])]);
    }

    #[test]
    fn pivots_stay_sorted_when_inserted_out_of_order() {
        let f = Field::Rational;
        let mut r = RowReducer::new(f, 3);
        r.push(row(f, &[0, 0, 5]));
        r.push(row(f, &[1, 1, 1]));
        assert_eq!(r.pivots(), &[0, 2]);
        assert_eq!(r.rows()[0], row(f, &[1, 1, 0]));
        assert!(r.contains(&row(f, &[2, 2, 7])));
        assert!(!r.contains(&row(f, &[0, 1, 0])));
    }
}
