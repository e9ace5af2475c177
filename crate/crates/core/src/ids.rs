//! Structured string identifiers for vertices and edges.
//!
//! An identifier is a `:`-separated list of segments such as `b:3`, `n:0:1`
//! or `C:4:0`. Identifiers are totally ordered segment by segment: two
//! segments that both parse as integers compare numerically, a numeric
//! segment sorts before a textual one, and textual segments compare
//! bytewise. When one identifier is a prefix of the other, the shorter one
//! sorts first. So `b:2 < b:10 < t:0` and `n < n:0 < n:0:1 < n:1`.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

fn compare_labels(a: &str, b: &str) -> Ordering {
    let mut left = a.split(':');
    let mut right = b.split(':');
    loop {
        match (left.next(), right.next()) {
            (None, None) => return Ordering::Equal,
            (None, Some(_)) => return Ordering::Less,
            (Some(_), None) => return Ordering::Greater,
            (Some(x), Some(y)) => {
                let ord = match (x.parse::<i64>(), y.parse::<i64>()) {
                    (Ok(p), Ok(q)) => p.cmp(&q).then_with(|| x.cmp(y)),
                    (Ok(_), Err(_)) => Ordering::Less,
                    (Err(_), Ok(_)) => Ordering::Greater,
                    (Err(_), Err(_)) => x.cmp(y),
                };
                if ord != Ordering::Equal {
                    return ord;
                }
            }
        }
    }
}

macro_rules! label_type {
    ($(#[$meta:meta])* $name:ident) => {
        $(#[$meta])*
        #[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
        #[serde(transparent)]
        pub struct $name(String);

        impl $name {
            pub fn new(label: impl Into<String>) -> Self {
                Self(label.into())
            }

            pub fn as_str(&self) -> &str {
                &self.0
            }

            /// The `i`-th `:`-separated segment.
            pub fn segment(&self, i: usize) -> Option<&str> {
                self.0.split(':').nth(i)
            }
        }

        impl Ord for $name {
            fn cmp(&self, other: &Self) -> Ordering {
                compare_labels(&self.0, &other.0)
            }
        }

        impl PartialOrd for $name {
            fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
                Some(self.cmp(other))
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0)
            }
        }

        impl From<&str> for $name {
            fn from(s: &str) -> Self {
                Self(s.to_owned())
            }
        }

        impl From<String> for $name {
            fn from(s: String) -> Self {
                Self(s)
            }
        }
    };
}

label_type!(
    /// Vertex identifier.
    VertexId
);
label_type!(
    /// Edge identifier. Edges keep their identifier in every quotient graph.
    EdgeId
);
