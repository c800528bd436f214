//! The modified dunce hat and its gradient.

use std::fmt;
use std::str::FromStr;

use crate::complex::{Simplex, SimplicialComplex};
use crate::morse::{validate, DiscreteGradient, GradientPair};

/// Vertex letters of the gadget, in token order.
pub const GADGET_VERTICES: [&str; 7] = ["q", "r", "s", "t", "u", "v", "w"];

pub const GADGET_TRIANGLES: [[&str; 3]; 13] = [
    ["s", "t", "u"],
    ["t", "u", "v"],
    ["q", "u", "v"],
    ["q", "s", "v"],
    ["r", "s", "v"],
    ["r", "t", "v"],
    ["q", "r", "s"],
    ["q", "r", "u"],
    ["r", "u", "w"],
    ["r", "t", "w"],
    ["q", "u", "w"],
    ["q", "s", "w"],
    ["s", "t", "w"],
];

/// Pairs of the gadget gradient: everything but `s`, `t` and `η` is matched.
const GRADIENT_PAIRS: [(&[&str], &[&str]); 18] = [
    (&["s", "u"], &["s", "t", "u"]),
    (&["t", "u"], &["t", "u", "v"]),
    (&["u", "v"], &["q", "u", "v"]),
    (&["s", "v"], &["r", "s", "v"]),
    (&["r", "v"], &["r", "t", "v"]),
    (&["q", "v"], &["q", "s", "v"]),
    (&["r", "s"], &["q", "r", "s"]),
    (&["r", "t"], &["r", "t", "w"]),
    (&["q", "r"], &["q", "r", "u"]),
    (&["r", "u"], &["r", "u", "w"]),
    (&["u", "w"], &["q", "u", "w"]),
    (&["q", "w"], &["q", "s", "w"]),
    (&["s", "w"], &["s", "t", "w"]),
    (&["u"], &["q", "u"]),
    (&["q"], &["q", "s"]),
    (&["r"], &["r", "w"]),
    (&["v"], &["t", "v"]),
    (&["w"], &["t", "w"]),
];

/// Named simplices of the gadget.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Role {
    Q,
    R,
    S,
    T,
    U,
    V,
    W,
    Omega,
    Eta,
    Phi,
    Psi,
    Gamma,
}

impl Role {
    pub const ALL: [Role; 12] = [
        Role::Q,
        Role::R,
        Role::S,
        Role::T,
        Role::U,
        Role::V,
        Role::W,
        Role::Omega,
        Role::Eta,
        Role::Phi,
        Role::Psi,
        Role::Gamma,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Role::Q => "q",
            Role::R => "r",
            Role::S => "s",
            Role::T => "t",
            Role::U => "u",
            Role::V => "v",
            Role::W => "w",
            Role::Omega => "omega",
            Role::Eta => "eta",
            Role::Phi => "phi",
            Role::Psi => "psi",
            Role::Gamma => "Gamma",
        }
    }

    /// Gadget vertex letters spanning the role.
    pub fn letters(self) -> &'static [&'static str] {
        match self {
            Role::Q => &["q"],
            Role::R => &["r"],
            Role::S => &["s"],
            Role::T => &["t"],
            Role::U => &["u"],
            Role::V => &["v"],
            Role::W => &["w"],
            Role::Omega => &["s", "u"],
            Role::Eta => &["s", "t"],
            Role::Phi => &["t", "v"],
            Role::Psi => &["t", "w"],
            Role::Gamma => &["s", "t", "u"],
        }
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Role {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Role::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| format!("unknown role '{s}'"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gadget {
    complex: SimplicialComplex,
}

impl Gadget {
    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn role(&self, role: Role) -> Simplex {
        Simplex::from_tokens(role.letters()).expect("static tokens")
    }
}

/// The 13-triangle modified dunce hat on vertices q, r, s, t, u, v, w.
pub fn modified_dunce_hat() -> Gadget {
    Gadget {
        complex: SimplicialComplex::from_maximal(GADGET_TRIANGLES).expect("static gadget"),
    }
}

/// Gradient on the gadget whose critical simplices are exactly `s`, `t` and `η`.
pub fn dunce_gradient(g: &Gadget) -> DiscreteGradient {
    let pairs: Vec<GradientPair> = GRADIENT_PAIRS
        .iter()
        .map(|(f, c)| GradientPair::new(Simplex::from_tokens(*f).unwrap(), Simplex::from_tokens(*c).unwrap()))
        .collect();
    validate(&g.complex, &pairs).expect("gadget gradient is acyclic")
}

/// Maximal faces of the standard 8-vertex dunce hat triangulation.
pub const CLASSIC_DUNCE_HAT: [[&str; 3]; 17] = [
    ["1", "2", "4"],
    ["1", "2", "7"],
    ["1", "2", "8"],
    ["1", "3", "5"],
    ["1", "3", "6"],
    ["1", "3", "8"],
    ["1", "4", "7"],
    ["1", "5", "6"],
    ["2", "3", "5"],
    ["2", "3", "6"],
    ["2", "3", "7"],
    ["2", "4", "6"],
    ["2", "5", "8"],
    ["3", "4", "7"],
    ["3", "4", "8"],
    ["4", "5", "6"],
    ["4", "5", "8"],
];

pub fn classic_dunce_hat() -> SimplicialComplex {
    SimplicialComplex::from_maximal(CLASSIC_DUNCE_HAT).expect("static fixture")
}
