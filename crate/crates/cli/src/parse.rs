//! Argument syntax beyond ring specs: root-element sets, matrices and
//! degree classes. Ring elements use the coefficient-list syntax of ring
//! specs (`0,1,1` is `T + T^2`; `1:1` is a digit vector in F_{p^m}).

use chevfq::chevmat::{GroupMat, Matrix};
use chevfq::ffring::{Poly, RingHandle};
use chevfq::rootdata::{Root, RootSystem, RootType};

/// `coords@coeffs` items separated by `;`, e.g. `1,0@1;0,1@0,1` for
/// `{e_(1,0)(1), e_(0,1)(T)}`.
pub fn root_elements(ty: RootType, ring: &RingHandle, s: &str) -> Result<Vec<GroupMat>, String> {
    let sys = RootSystem::from_label(&ty.label()).map_err(|e| e.to_string())?;
    s.split(';')
        .filter(|item| !item.trim().is_empty())
        .map(|item| {
            let (coords, coeff) = item.split_once('@').ok_or_else(|| format!("{item:?}: expected coords@coeffs"))?;
            let phi = Root::parse_coords(coords).ok_or_else(|| format!("{coords:?}: bad root coordinates"))?;
            if !sys.roots().contains(&phi) {
                return Err(format!("{} is not a root of {ty}", phi.coords()));
            }
            let x = ring.parse_elem(coeff).map_err(|e| e.to_string())?;
            Ok(GroupMat::root_element(ty, ring, &phi, &x))
        })
        .collect()
}

/// Rows separated by `;`, entries by whitespace.
pub fn matrix(ring: &RingHandle, s: &str) -> Result<Matrix<Poly>, String> {
    let rows: Vec<Vec<Poly>> = s
        .split(';')
        .map(|row| {
            row.split_whitespace().map(|e| ring.parse_elem(e).map(|x| x.poly().clone()).map_err(|e| e.to_string())).collect()
        })
        .collect::<Result<_, _>>()?;
    let n = rows.len();
    if n == 0 || rows.iter().any(|r| r.len() != n) {
        return Err(format!("matrix must be square, got {n} rows of lengths {:?}", rows.iter().map(Vec::len).collect::<Vec<_>>()));
    }
    Ok(Matrix::from_vec(n, rows.into_iter().flatten().collect()))
}

/// `m0,n0` with `n0 > 0`.
pub fn degree_class(s: &str) -> Result<(i64, u64), String> {
    let (m, n) = s.split_once(',').ok_or("degree class must be m0,n0")?;
    let m0 = m.trim().parse::<i64>().map_err(|e| format!("m0: {e}"))?;
    let n0 = n.trim().parse::<u64>().map_err(|e| format!("n0: {e}"))?;
    if n0 == 0 {
        return Err("n0 must be positive".into());
    }
    Ok((m0, n0))
}

/// Polynomials separated by `;`.
pub fn poly_list(ring: &RingHandle, s: &str) -> Result<Vec<Poly>, String> {
    s.split(';')
        .filter(|p| !p.trim().is_empty())
        .map(|p| ring.parse_elem(p).map(|x| x.poly().clone()).map_err(|e| e.to_string()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn root_element_items() {
        let r = RingHandle::parse("GF(2)[T]/(0,0,1)").unwrap();
        let t = root_elements(RootType::C2, &r, "1,0@1; 2,1@0,1").unwrap();
        assert_eq!(t.len(), 2);
        assert!(root_elements(RootType::C2, &r, "1,2@1").is_err());
        assert!(root_elements(RootType::C2, &r, "1,0").is_err());
    }

    #[test]
    fn matrices_and_classes() {
        let r = RingHandle::parse("GF(3)[T]").unwrap();
        let m = matrix(&r, "1 0,1; 0 1").unwrap();
        assert_eq!(m.dim(), 2);
        assert!(matrix(&r, "1 0; 0").is_err());
        assert_eq!(degree_class("-1,3").unwrap(), (-1, 3));
        assert!(degree_class("1,0").is_err());
    }
}
