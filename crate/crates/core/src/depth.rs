use std::fmt;

/// An s-adic depth or valuation.
///
/// The exact path only ever produces `Finite` or `Infinite`. Truncated
/// arithmetic at precision `N` cannot see past `s^N`, so a truncated value
/// that vanishes entirely reports `AtLeast(N)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Depth {
    Finite(u32),
    AtLeast(u32),
    Infinite,
}

impl Depth {
    /// True when the depth is certainly at least `k`.
    pub fn is_at_least(self, k: u32) -> bool {
        match self {
            Depth::Finite(d) | Depth::AtLeast(d) => d >= k,
            Depth::Infinite => true,
        }
    }

    pub fn finite(self) -> Option<u32> {
        match self {
            Depth::Finite(d) => Some(d),
            _ => None,
        }
    }

    /// Lower bound usable for comparisons; `u32::MAX` for infinity.
    pub fn lower_bound(self) -> u32 {
        match self {
            Depth::Finite(d) | Depth::AtLeast(d) => d,
            Depth::Infinite => u32::MAX,
        }
    }
}

impl fmt::Display for Depth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Depth::Finite(d) => write!(f, "{d}"),
            Depth::AtLeast(d) => write!(f, ">={d}"),
            Depth::Infinite => write!(f, "inf"),
        }
    }
}

impl serde::Serialize for Depth {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Depth::Finite(d) => s.serialize_u32(*d),
            other => s.serialize_str(&other.to_string()),
        }
    }
}

impl<'de> serde::Deserialize<'de> for Depth {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(serde::Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(u32),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(k) => Ok(Depth::Finite(k)),
            Raw::Text(t) if t == "inf" => Ok(Depth::Infinite),
            Raw::Text(t) => t
                .strip_prefix(">=")
                .and_then(|k| k.parse().ok())
                .map(Depth::AtLeast)
                .ok_or_else(|| serde::de::Error::custom(format!("bad depth `{t}`"))),
        }
    }
}
