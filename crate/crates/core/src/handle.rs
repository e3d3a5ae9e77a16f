//! Channel identifiers.

use std::borrow::Borrow;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Longest handle accepted, in characters.
pub const MAX_HANDLE_LEN: usize = 15;

/// Returns true for the characters allowed inside a handle, in either case.
pub fn is_handle_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid handle {0:?}: expected 1-15 characters from [A-Za-z0-9_]")]
pub struct InvalidHandle(pub String);

/// A lowercase channel handle: 1 to 15 characters from `[a-z0-9_]`.
///
/// Construction lowercases its input, so `@MaxKeiser` and `@maxkeiser`
/// name the same channel.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Handle(String);

impl Handle {
    pub fn new(raw: &str) -> Result<Self, InvalidHandle> {
        let len = raw.chars().count();
        if len == 0 || len > MAX_HANDLE_LEN || !raw.chars().all(is_handle_char) {
            return Err(InvalidHandle(raw.to_owned()));
        }
        Ok(Handle(raw.to_ascii_lowercase()))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn into_string(self) -> String {
        self.0
    }
}

impl fmt::Display for Handle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl AsRef<str> for Handle {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

impl Borrow<str> for Handle {
    fn borrow(&self) -> &str {
        &self.0
    }
}

impl std::str::FromStr for Handle {
    type Err = InvalidHandle;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Handle::new(s)
    }
}

impl TryFrom<&str> for Handle {
    type Error = InvalidHandle;

    fn try_from(s: &str) -> Result<Self, Self::Error> {
        Handle::new(s)
    }
}

impl Serialize for Handle {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for Handle {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = String::deserialize(deserializer)?;
        Handle::new(&raw).map_err(serde::de::Error::custom)
    }
}

/// Builds a handle from a literal known to be valid. Panics otherwise.
#[doc(hidden)]
pub fn h(raw: &str) -> Handle {
    Handle::new(raw).expect("valid handle literal")
}
