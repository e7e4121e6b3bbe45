use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::RatFnError;

/// Ordered set of variable names; the position of a name is its exponent slot.
///
/// Append-only. Fresh names are `x<k>` with a counter that never reuses a name.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VarRegistry {
    names: Vec<String>,
    fresh: u64,
}

impl VarRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    /// Registry holding the parameter `t` at slot 0.
    pub fn with_parameter() -> Self {
        let mut r = Self::new();
        r.register("t").expect("empty registry");
        r
    }

    pub fn from_names<I, S>(names: I) -> Result<Self, RatFnError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut r = Self::new();
        for n in names {
            r.register(n)?;
        }
        Ok(r)
    }

    pub fn register(&mut self, name: impl Into<String>) -> Result<usize, RatFnError> {
        let name = name.into();
        if !is_valid_name(&name) {
            return Err(RatFnError::InvalidVariableName(name));
        }
        if self.index_of(&name).is_some() {
            return Err(RatFnError::DuplicateVariable(name));
        }
        self.names.push(name);
        Ok(self.names.len() - 1)
    }

    /// Allocates a new `x<k>` name distinct from every registered one.
    pub fn fresh(&mut self) -> usize {
        loop {
            self.fresh += 1;
            let name = format!("x{}", self.fresh);
            if self.index_of(&name).is_none() {
                self.names.push(name);
                return self.names.len() - 1;
            }
        }
    }

    pub fn fresh_many(&mut self, n: usize) -> Vec<usize> {
        (0..n).map(|_| self.fresh()).collect()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn name(&self, index: usize) -> Option<&str> {
        self.names.get(index).map(String::as_str)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// Number of fresh names handed out so far.
    pub fn fresh_counter(&self) -> u64 {
        self.fresh
    }

    /// Rebuilds a registry from a snapshot (names in slot order plus counter).
    pub fn restore(names: Vec<String>, fresh: u64) -> Result<Self, RatFnError> {
        let mut r = Self::from_names(names)?;
        r.fresh = fresh;
        Ok(r)
    }
}

/// `x<digits>` or `t`.
pub fn is_valid_name(name: &str) -> bool {
    if name == "t" {
        return true;
    }
    match name.strip_prefix('x') {
        Some(d) => !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit()),
        None => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fresh_skips_taken_names() {
        let mut r = VarRegistry::from_names(["x1", "x3"]).unwrap();
        let a = r.fresh();
        let b = r.fresh();
        assert_eq!(r.name(a), Some("x2"));
        assert_eq!(r.name(b), Some("x4"));
        assert!(r.register("x2").is_err());
        assert!(r.register("y").is_err());
    }
}
