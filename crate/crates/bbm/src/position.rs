use std::fmt;
use std::str::FromStr;

/// Address of a node in an ordered tree: the sequence of child indices on
/// the path from the root. The root is the empty sequence.
///
/// The derived `Ord` on the underlying digit vector is exactly the
/// lexicographic order on words: a proper prefix sorts before its
/// extensions, and otherwise the first differing digit decides.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Position(Vec<u32>);

impl Position {
    pub fn root() -> Self {
        Position(Vec::new())
    }

    pub fn from_digits(digits: &[u32]) -> Self {
        Position(digits.to_vec())
    }

    pub fn digits(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_root(&self) -> bool {
        self.0.is_empty()
    }

    /// The i-th child of this position.
    pub fn child(&self, i: u32) -> Self {
        let mut digits = self.0.clone();
        digits.push(i);
        Position(digits)
    }

    pub fn parent(&self) -> Option<Self> {
        if self.0.is_empty() {
            None
        } else {
            Some(Position(self.0[..self.0.len() - 1].to_vec()))
        }
    }

    pub fn last(&self) -> Option<u32> {
        self.0.last().copied()
    }

    /// Prefix order: true when `self` is an ancestor of `other` or equal to it.
    pub fn is_prefix_of(&self, other: &Position) -> bool {
        other.0.len() >= self.0.len() && other.0[..self.0.len()] == self.0[..]
    }
}

impl fmt::Display for Position {
    /// Renders the root as `ε` and other positions as their digit string.
    /// Digits are concatenated when they are all single characters
    /// (`[1,0,0,0]` → `1000`); otherwise they are joined with dots, with a
    /// trailing dot added for one-digit positions so the two forms never
    /// collide (`[12]` → `12.`).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "ε");
        }
        if self.0.iter().all(|&d| d <= 9) {
            for d in &self.0 {
                write!(f, "{d}")?;
            }
            Ok(())
        } else {
            let joined = self
                .0
                .iter()
                .map(|d| d.to_string())
                .collect::<Vec<_>>()
                .join(".");
            if self.0.len() == 1 {
                write!(f, "{joined}.")
            } else {
                write!(f, "{joined}")
            }
        }
    }
}

impl fmt::Debug for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid position string {0:?}")]
pub struct ParsePositionError(pub String);

impl FromStr for Position {
    type Err = ParsePositionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "ε" || s.is_empty() {
            return Ok(Position::root());
        }
        if s.contains('.') {
            let mut digits = Vec::new();
            for part in s.split('.') {
                if part.is_empty() {
                    continue;
                }
                digits.push(
                    part.parse::<u32>()
                        .map_err(|_| ParsePositionError(s.to_string()))?,
                );
            }
            if digits.is_empty() {
                return Err(ParsePositionError(s.to_string()));
            }
            Ok(Position(digits))
        } else {
            s.chars()
                .map(|c| c.to_digit(10).ok_or_else(|| ParsePositionError(s.to_string())))
                .collect::<Result<Vec<_>, _>>()
                .map(Position)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pos(digits: &[u32]) -> Position {
        Position::from_digits(digits)
    }

    #[test]
    fn root_sorts_first() {
        assert!(Position::root() < pos(&[0]));
        assert!(Position::root() < pos(&[5, 1]));
    }

    #[test]
    fn prefix_sorts_before_extension() {
        assert!(pos(&[1]) < pos(&[1, 0]));
        assert!(pos(&[1, 0]) < pos(&[1, 0, 0, 0]));
    }

    #[test]
    fn first_digit_decides() {
        assert!(pos(&[0, 9, 9]) < pos(&[1]));
        assert!(pos(&[1, 2]) < pos(&[2]));
    }

    #[test]
    fn prefix_relation() {
        assert!(pos(&[1]).is_prefix_of(&pos(&[1, 0, 0])));
        assert!(Position::root().is_prefix_of(&pos(&[3])));
        assert!(!pos(&[1, 1]).is_prefix_of(&pos(&[1, 0])));
        assert!(!pos(&[1, 0, 0]).is_prefix_of(&pos(&[1])));
    }

    #[test]
    fn display_forms() {
        assert_eq!(Position::root().to_string(), "ε");
        assert_eq!(pos(&[1, 0, 0, 0]).to_string(), "1000");
        assert_eq!(pos(&[3, 12, 0]).to_string(), "3.12.0");
        assert_eq!(pos(&[12]).to_string(), "12.");
    }

    #[test]
    fn parse_forms() {
        assert_eq!("ε".parse::<Position>().unwrap(), Position::root());
        assert_eq!("1000".parse::<Position>().unwrap(), pos(&[1, 0, 0, 0]));
        assert_eq!("3.12.0".parse::<Position>().unwrap(), pos(&[3, 12, 0]));
        assert_eq!("12.".parse::<Position>().unwrap(), pos(&[12]));
        assert!("x7".parse::<Position>().is_err());
    }

    proptest! {
        #[test]
        fn display_round_trips(digits in proptest::collection::vec(0u32..40, 0..6)) {
            let p = Position::from_digits(&digits);
            let rendered = p.to_string();
            prop_assert_eq!(rendered.parse::<Position>().unwrap(), p);
        }

        #[test]
        fn child_extends_order(digits in proptest::collection::vec(0u32..6, 0..5), i in 0u32..6) {
            let p = Position::from_digits(&digits);
            let c = p.child(i);
            prop_assert!(p < c);
            prop_assert!(p.is_prefix_of(&c));
            prop_assert_eq!(c.parent().unwrap(), p);
        }
    }
}
