use std::fmt;

use crate::error::{Error, Result};

/// Maximum number of variables a [`VarTable`] can register.
pub const MAX_VARS: usize = 16;

/// Index of a registered variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(pub(crate) u8);

impl Var {
    pub const LAMBDA: Var = Var(0);
    pub const Y: Var = Var(1);
    pub const W: Var = Var(2);
    pub const W1: Var = Var(3);
    pub const W2: Var = Var(4);

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn from_index(i: usize) -> Var {
        assert!(i < MAX_VARS, "variable index {i} out of range");
        Var(i as u8)
    }
}

const RESERVED: usize = 5;

/// Variable registry: `λ, y, w, w₁, w₂`, then `z₁..z_n`, then `t₁..t_k`.
///
/// Registration order is also the graded-lex order used for canonical forms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VarTable {
    n: usize,
    k: usize,
}

impl VarTable {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        if k > n {
            return Err(Error::InvalidParameter(format!("k = {k} exceeds n = {n}")));
        }
        if RESERVED + n + k > MAX_VARS {
            return Err(Error::InvalidParameter(format!(
                "n = {n}, k = {k} needs {} variables, at most {MAX_VARS} are supported",
                RESERVED + n + k
            )));
        }
        Ok(VarTable { n, k })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        RESERVED + self.n + self.k
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn lambda(&self) -> Var {
        Var::LAMBDA
    }

    pub fn y(&self) -> Var {
        Var::Y
    }

    pub fn w(&self) -> Var {
        Var::W
    }

    /// `z_i`, 1-based.
    pub fn z(&self, i: usize) -> Var {
        assert!((1..=self.n).contains(&i), "z_{i} not registered (n = {})", self.n);
        Var((RESERVED + i - 1) as u8)
    }

    /// `t_a`, 1-based.
    pub fn t(&self, a: usize) -> Var {
        assert!((1..=self.k).contains(&a), "t_{a} not registered (k = {})", self.k);
        Var((RESERVED + self.n + a - 1) as u8)
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> {
        (0..self.len()).map(|i| Var(i as u8))
    }

    pub fn z_vars(&self) -> impl Iterator<Item = Var> + '_ {
        (1..=self.n).map(|i| self.z(i))
    }

    pub fn t_vars(&self) -> impl Iterator<Item = Var> + '_ {
        (1..=self.k).map(|a| self.t(a))
    }

    pub fn is_z(&self, v: Var) -> Option<usize> {
        let i = v.index();
        (RESERVED..RESERVED + self.n).contains(&i).then(|| i - RESERVED + 1)
    }

    pub fn is_t(&self, v: Var) -> Option<usize> {
        let i = v.index();
        (RESERVED + self.n..self.len()).contains(&i).then(|| i - RESERVED - self.n + 1)
    }

    /// Plain ASCII name (`lambda`, `w1`, `z3`, ...), used by JSON and the parser.
    pub fn ascii_name(&self, v: Var) -> String {
        match v.index() {
            0 => "lambda".into(),
            1 => "y".into(),
            2 => "w".into(),
            3 => "w1".into(),
            4 => "w2".into(),
            _ => {
                if let Some(i) = self.is_z(v) {
                    format!("z{i}")
                } else if let Some(a) = self.is_t(v) {
                    format!("t{a}")
                } else {
                    format!("x{}", v.index())
                }
            }
        }
    }

    /// Unicode name with subscripts (`λ`, `w₁`, `z₃`).
    pub fn pretty_name(&self, v: Var) -> String {
        match v.index() {
            0 => "λ".into(),
            1 => "y".into(),
            2 => "w".into(),
            3 => "w₁".into(),
            4 => "w₂".into(),
            _ => {
                if let Some(i) = self.is_z(v) {
                    format!("z{}", subscript(i))
                } else if let Some(a) = self.is_t(v) {
                    format!("t{}", subscript(a))
                } else {
                    format!("x{}", subscript(v.index()))
                }
            }
        }
    }

    pub fn latex_name(&self, v: Var) -> String {
        match v.index() {
            0 => "\\lambda".into(),
            1 => "y".into(),
            2 => "w".into(),
            3 => "w_{1}".into(),
            4 => "w_{2}".into(),
            _ => {
                if let Some(i) = self.is_z(v) {
                    format!("z_{{{i}}}")
                } else if let Some(a) = self.is_t(v) {
                    format!("t_{{{a}}}")
                } else {
                    format!("x_{{{}}}", v.index())
                }
            }
        }
    }

    pub fn lookup(&self, name: &str) -> Option<Var> {
        let name = name.trim();
        let normalized: String = name
            .chars()
            .map(|c| match c {
                '₀'..='₉' => char::from(b'0' + (c as u32 - '₀' as u32) as u8),
                _ => c,
            })
            .collect();
        match normalized.as_str() {
            "lambda" | "λ" | "la" => return Some(Var::LAMBDA),
            "y" => return Some(Var::Y),
            "w" => return Some(Var::W),
            "w1" => return Some(Var::W1),
            "w2" => return Some(Var::W2),
            _ => {}
        }
        let (head, digits) = normalized.split_at(normalized.find(|c: char| c.is_ascii_digit())?);
        let idx: usize = digits.parse().ok()?;
        match head {
            "z" if (1..=self.n).contains(&idx) => Some(self.z(idx)),
            "t" if (1..=self.k).contains(&idx) => Some(self.t(idx)),
            _ => None,
        }
    }

    pub fn names(&self) -> Vec<String> {
        self.vars().map(|v| self.ascii_name(v)).collect()
    }

    /// Position of `v` in the order used for human-readable output:
    /// `λ, w, w₁, w₂, t's, z's, y`.
    pub fn display_rank(&self, v: Var) -> usize {
        let i = v.index();
        match i {
            0 => 0,
            1 => MAX_VARS,
            2..=4 => i - 1,
            _ => {
                if let Some(a) = self.is_t(v) {
                    4 + a
                } else {
                    4 + self.k + self.is_z(v).unwrap_or(i)
                }
            }
        }
    }
}

impl fmt::Display for VarTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.names().join(", "))
    }
}

pub fn subscript(i: usize) -> String {
    i.to_string()
        .chars()
        .map(|c| char::from_u32('₀' as u32 + c.to_digit(10).unwrap()).unwrap())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn layout_is_fixed() {
        let vt = VarTable::new(3, 2).unwrap();
        assert_eq!(vt.len(), 10);
        assert_eq!(vt.z(1).index(), 5);
        assert_eq!(vt.t(2).index(), 9);
        assert_eq!(vt.lookup("z₂"), Some(vt.z(2)));
        assert_eq!(vt.lookup("t2"), Some(vt.t(2)));
        assert_eq!(vt.lookup("t3"), None);
        assert_eq!(vt.pretty_name(vt.z(3)), "z₃");
        assert!(VarTable::new(3, 4).is_err());
        assert!(VarTable::new(6, 6).is_err());
    }

    #[test]
    fn names_are_unique() {
        let vt = VarTable::new(5, 5).unwrap();
        let mut names = vt.names();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), vt.len());
    }
}
