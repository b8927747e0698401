//! Named base quantaloids used throughout the tests and accepted by name in
//! structure files: `q2`, `q3`, `p2`, `n3` and `trop:<N>`.

use crate::error::{QError, Result};
use crate::lattice::FiniteLattice;

use super::{build_idm, Quantaloid};

/// The two-element Boolean algebra, composition is meet.
pub fn q2() -> Quantaloid {
    Quantaloid::quantale("q2", FiniteLattice::chain(["0", "1"]), 1, |x, y| x.min(y))
        .expect("q2 tables are well-shaped")
}

/// The three-element chain `0 < m < 1` as a locale.
pub fn q3() -> Quantaloid {
    Quantaloid::quantale("q3", FiniteLattice::chain(["0", "m", "1"]), 2, |x, y| x.min(y))
        .expect("q3 tables are well-shaped")
}

/// The powerset of a two-element set `{0, a, b, 1}` as a locale.
pub fn p2() -> Quantaloid {
    // bitmask encoding: 0 = {}, 1 = {a}, 2 = {b}, 3 = {a, b}
    let lattice = FiniteLattice::from_order(
        vec!["0".into(), "a".into(), "b".into(), "1".into()],
        |x, y| x & y == x,
    )
    .expect("powerset order");
    Quantaloid::quantale("p2", lattice, 3, |x, y| x & y).expect("p2 tables are well-shaped")
}

/// The chain `0 < 1 < t` with unit `1`, `t ∘ t = t` and `0` absorbing.
///
/// The monad `t` does not split here, which is what makes it a useful
/// test base for normalization.
pub fn n3() -> Quantaloid {
    Quantaloid::quantale("n3", FiniteLattice::chain(["0", "1", "t"]), 1, |x, y| {
        if x == 0 || y == 0 {
            0
        } else {
            x.max(y)
        }
    })
    .expect("n3 tables are well-shaped")
}

/// Truncated tropical quantale on `{0, ..., n}`: `x ⊑ y` iff `x >= y`,
/// `x ∘ y = min(x + y, n)`, unit `0`. The cutoff `n` stands in for infinity.
pub fn trop(n: usize) -> Result<Quantaloid> {
    if n == 0 {
        return Err(QError::UnknownFixture("trop:0 (cutoff must be at least 1)".into()));
    }
    let names = (0..=n).map(|i| i.to_string()).collect();
    let lattice = FiniteLattice::from_order(names, |x, y| x >= y)?;
    Quantaloid::quantale(format!("trop:{n}"), lattice, 0, move |x, y| (x + y).min(n))
}

/// Resolves a fixture name. `idm:<name>` builds the split-idempotent
/// completion of a fixture.
pub fn fixture(name: &str) -> Result<Quantaloid> {
    if let Some(inner) = name.strip_prefix("idm:") {
        return Ok(build_idm(&fixture(inner)?));
    }
    match name {
        "q2" => Ok(q2()),
        "q3" => Ok(q3()),
        "p2" => Ok(p2()),
        "n3" => Ok(n3()),
        _ => {
            let n = name
                .strip_prefix("trop:")
                .and_then(|s| s.parse::<usize>().ok())
                .ok_or_else(|| QError::UnknownFixture(name.to_string()))?;
            trop(n)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_resolve() {
        for name in ["q2", "q3", "p2", "n3", "trop:4", "idm:q3", "idm:idm:q2"] {
            assert_eq!(fixture(name).unwrap().name(), name);
        }
        assert!(fixture("trop:x").is_err());
        assert!(fixture("trop:0").is_err());
        assert!(fixture("q4").is_err());
    }
}
