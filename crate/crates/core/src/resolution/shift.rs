//! The full-shift monoids `M_n`.

use super::MonoidMap;
use crate::monoids::{MonoidElement, MonoidError, MonoidPresentation, Relation};

/// `M_n` with the map `phi_n: M_n -> M_{n+1}`, `b -> 0b + 1b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FullShiftMonoid {
    pub n: usize,
    pub presentation: MonoidPresentation,
    pub phi: MonoidMap,
}

fn words(n: usize) -> Vec<String> {
    (0..1usize << n).map(|i| if n == 0 { String::new() } else { format!("{i:0n$b}") }).collect()
}

fn presentation(n: usize) -> MonoidPresentation {
    let gens = words(n);
    let index = |w: &str| gens.iter().position(|g| g == w).expect("binary word of length n");
    let relations = words(n - 1)
        .iter()
        .map(|a| {
            let mut lhs = MonoidElement::zero(gens.len());
            let mut rhs = MonoidElement::zero(gens.len());
            lhs.0[index(&format!("{a}0"))] += 1;
            lhs.0[index(&format!("{a}1"))] += 1;
            rhs.0[index(&format!("0{a}"))] += 1;
            rhs.0[index(&format!("1{a}"))] += 1;
            Relation { lhs, rhs }
        })
        .collect();
    MonoidPresentation::new(gens, relations).expect("binary words are distinct")
}

/// Generators are the binary words of length `n`; relations `a0 + a1 = 0a + 1a` for words `a` of length `n - 1`.
pub fn fullshift_monoid(n: usize) -> Result<FullShiftMonoid, MonoidError> {
    if n == 0 || n > 20 {
        return Err(MonoidError::BadParameter(format!("full-shift monoid needs 1 <= n <= 20, got {n}")));
    }
    let next = words(n + 1);
    let images = words(n)
        .iter()
        .map(|b| {
            let mut x = MonoidElement::zero(next.len());
            for w in [format!("0{b}"), format!("1{b}")] {
                x.0[next.iter().position(|g| *g == w).expect("word of length n + 1")] += 1;
            }
            x
        })
        .collect();
    Ok(FullShiftMonoid { n, presentation: presentation(n), phi: MonoidMap { images } })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoids::{decide_equal, EqVerdict, SearchBudget};

    #[test]
    fn small_presentations() {
        assert_eq!(fullshift_monoid(1).unwrap().presentation.to_string(), "<0, 1 | 0 + 1 = 0 + 1>");
        let m2 = fullshift_monoid(2).unwrap().presentation;
        assert_eq!(m2.to_string(), "<00, 01, 10, 11 | 00 + 01 = 00 + 10, 10 + 11 = 01 + 11>");
        assert!(m2.is_graded());
        assert!(fullshift_monoid(0).is_err());
    }

    #[test]
    fn phi_images_agree() {
        let m1 = fullshift_monoid(1).unwrap();
        let m2 = fullshift_monoid(2).unwrap().presentation;
        let zero = m1.phi.apply(&MonoidElement(vec![1, 0]));
        assert_eq!(m2.format_element(&zero), "00 + 10");
        let other = m2.parse_element("00 + 01").unwrap();
        assert!(matches!(decide_equal(&m2, &zero, &other, &SearchBudget::default()).unwrap(), EqVerdict::Equal { .. }));
    }
}
