//! Golden ideal files shipped with the crate, and the determinantal ideals
//! of a generic matrix.

use std::sync::Arc;

use crate::error::Result;
use crate::field::Field;
use crate::groebner::Ideal;
use crate::parse;
use crate::poly::Polynomial;
use crate::ring::PolyRing;
use crate::AnyIdeal;

pub const SKEW_LINES: &str = include_str!("../../data/skew_lines.ideal");
pub const SKEW_LINES_F2: &str = include_str!("../../data/skew_lines_f2.ideal");
pub const TWISTED_QUARTIC: &str = include_str!("../../data/twisted_quartic.ideal");
pub const TWISTED_QUARTIC_F2: &str = include_str!("../../data/twisted_quartic_f2.ideal");
pub const LINK_CI: &str = include_str!("../../data/link_ci.ideal");
pub const MAXIMAL_IDEAL_4: &str = include_str!("../../data/maximal_ideal_4.ideal");
pub const DET_4X3: &str = include_str!("../../data/det_4x3.ideal");
pub const DET_2X3: &str = include_str!("../../data/det_2x3.ideal");

/// Generators of a golden file, re-read in `ring`.
pub fn load_in<F: Field>(ring: &Arc<PolyRing<F>>, text: &str) -> Result<Ideal<F>> {
    let (_, lines) = parse::split_ideal_text(text)?;
    parse::parse_ideal_in(ring, &lines)
}

pub fn load(text: &str) -> Result<AnyIdeal> {
    parse::parse_ideal_text(text)
}

fn det<F: Field>(ring: &Arc<PolyRing<F>>, m: &[Vec<Polynomial<F>>]) -> Polynomial<F> {
    match m.len() {
        0 => Polynomial::one(ring),
        1 => m[0][0].clone(),
        k => {
            let mut acc = Polynomial::zero(ring);
            for c in 0..k {
                let minor: Vec<Vec<Polynomial<F>>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(j, _)| j != c)
                            .map(|(_, p)| p.clone())
                            .collect()
                    })
                    .collect();
                let term = &m[0][c] * &det(ring, &minor);
                acc = if c % 2 == 0 {
                    &acc + &term
                } else {
                    &acc - &term
                };
            }
            acc
        }
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if n < k {
        return Vec::new();
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out.sort();
    out
}

/// The ideal of `size`-minors of the submatrix on `rows` of the generic
/// `total_rows x cols` matrix with entries `x_{r*cols + c}`.
pub fn generic_minors<F: Field>(
    ring: &Arc<PolyRing<F>>,
    cols: usize,
    rows: &[usize],
    size: usize,
) -> Result<Ideal<F>> {
    let entry = |r: usize, c: usize| Polynomial::var(ring, r * cols + c);
    let mut gens = Vec::new();
    for rs in subsets(rows.len(), size) {
        for cs in subsets(cols, size) {
            let m: Vec<Vec<Polynomial<F>>> = rs
                .iter()
                .map(|&i| cs.iter().map(|&c| entry(rows[i], c)).collect())
                .collect();
            gens.push(det(ring, &m));
        }
    }
    Ideal::new(ring, gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::monomial::MonomialOrder;

    #[test]
    fn golden_files_parse() {
        for text in [
            SKEW_LINES,
            SKEW_LINES_F2,
            TWISTED_QUARTIC,
            TWISTED_QUARTIC_F2,
            LINK_CI,
            MAXIMAL_IDEAL_4,
            DET_4X3,
            DET_2X3,
        ] {
            load(text).unwrap();
        }
        assert_eq!(load(TWISTED_QUARTIC_F2).unwrap().characteristic(), 2);
    }

    #[test]
    fn minors_match_golden_files() {
        let r = PolyRing::new(PrimeField::new(32003).unwrap(), 12, MonomialOrder::GREVLEX).unwrap();
        let i3 = generic_minors(&r, 3, &[0, 1, 2, 3], 3).unwrap();
        let golden = load_in(&r, DET_4X3).unwrap();
        assert_eq!(i3.generators().len(), 4);
        // same generators up to sign
        for g in golden.generators() {
            assert!(i3.generators().iter().any(|h| h == g || *h == -g));
        }
        let i2 = generic_minors(&r, 3, &[2, 3], 2).unwrap();
        assert!(i2.equals(&load_in(&r, DET_2X3).unwrap()).unwrap());
    }
}
