use crate::error::{Error, Result};
use crate::exactlin::{Field, Matrix, Subspace};
use crate::filtration::IncFiltration;

/// Monodromy weight filtration of a nilpotent N centered at `center`:
/// M_{c+k} = Σ_{j ≥ max(0,−k)} N^j(ker N^{k+2j+1}).
pub fn weight_filtration<T: Field>(n: &Matrix<T>, center: i64) -> Result<IncFiltration<T>> {
    if !n.is_square() {
        return Err(Error::DimensionMismatch(format!("N is {}x{}", n.rows(), n.cols())));
    }
    let dim = n.rows();
    let Some(len) = n.nilpotency_index() else {
        return Err(Error::NotNilpotent("weight filtration input".into()));
    };
    if dim == 0 || len <= 1 {
        return Ok(IncFiltration::pure(dim, center));
    }
    let l = (len - 1) as i64;
    let mut pows = vec![Matrix::identity(dim)];
    for _ in 1..len {
        let next = pows.last().unwrap().mul(n);
        pows.push(next);
    }
    let ker = |e: i64| -> Subspace<T> {
        if e <= 0 {
            Subspace::zero(dim)
        } else if e as usize >= len {
            Subspace::full(dim)
        } else {
            Subspace::kernel_of(&pows[e as usize])
        }
    };
    IncFiltration::from_fn(dim, center - l, center + l, |kk| {
        let k = kk - center;
        let mut s = Subspace::zero(dim);
        for j in 0i64.max(-k)..len as i64 {
            let e = k + 2 * j + 1;
            if e <= 0 {
                continue;
            }
            s = s.sum(&ker(e).image(&pows[j as usize]));
        }
        s
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{qv, QMatrix, QSubspace};

    #[test]
    fn jordan_block_two() {
        let n = QMatrix::from_ints(&[&[0, 1], &[0, 0]]);
        let m = weight_filtration(&n, 0).unwrap();
        let e1 = QSubspace::span(2, &[qv(&[1, 0])]);
        assert!(m.get(-2).is_zero());
        assert_eq!(m.get(-1), &e1);
        assert_eq!(m.get(0), &e1);
        assert!(m.get(1).is_full());
    }

    #[test]
    fn jordan_block_three_is_symmetric() {
        let n = QMatrix::from_ints(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
        let m = weight_filtration(&n, 5).unwrap();
        assert_eq!(m.gr_dim(3), 1);
        assert_eq!(m.gr_dim(5), 1);
        assert_eq!(m.gr_dim(7), 1);
        assert_eq!(m.gr_dim(4) + m.gr_dim(6), 0);
    }
}
