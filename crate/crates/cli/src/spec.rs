//! Parsed command line: what to run, on which scenario, with which parameters.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::path::PathBuf;

use anyhow::{anyhow, bail, Result};
use ludersgap::lgi::{InitialState, LgiParams, Rule};
use ludersgap::nci::NciParams;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scenario {
    Lgi,
    Nci,
}

impl Scenario {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "lgi" => Ok(Scenario::Lgi),
            "nci" => Ok(Scenario::Nci),
            _ => bail!("unknown scenario `{s}` (expected lgi or nci)"),
        }
    }

    /// Real-valued parameters, in canonical order.
    pub fn parameters(self) -> &'static [&'static str] {
        match self {
            Scenario::Lgi => &["g1", "g2", "xi"],
            Scenario::Nci => &["theta", "phi", "eps", "lam", "del"],
        }
    }

    pub fn outputs(self) -> [&'static str; 3] {
        match self {
            Scenario::Lgi => ["k13", "k23", "k12"],
            Scenario::Nci => ["b31", "b23", "b12"],
        }
    }

    /// Natural domain of a parameter and whether it is an angle.
    pub fn domain(self, name: &str) -> Result<(f64, f64, bool)> {
        match (self, name) {
            (Scenario::Lgi, "g1" | "g2" | "g") => Ok((-PI, PI, true)),
            (Scenario::Nci, "theta" | "phi") => Ok((0.0, 2.0 * PI, true)),
            (Scenario::Lgi, "xi") | (Scenario::Nci, "eps" | "lam" | "del") => Ok((0.0, 1.0, false)),
            _ => bail!("`{name}` is not a parameter of this scenario"),
        }
    }
}

pub fn parse_rule(s: &str) -> Result<Rule> {
    match s {
        "luders" | "lueders" | "l" => Ok(Rule::Luders),
        "vn" | "v" => Ok(Rule::VonNeumann),
        _ => bail!("unknown rule `{s}` (expected luders or vn)"),
    }
}

pub fn rule_name(r: Rule) -> &'static str {
    match r {
        Rule::Luders => "luders",
        Rule::VonNeumann => "vn",
    }
}

pub fn parse_state(s: &str) -> Result<InitialState> {
    match s {
        "001" => Ok(InitialState::Ket001),
        "100" => Ok(InitialState::Ket100),
        _ => bail!("unknown state `{s}` (expected 001 or 100)"),
    }
}

pub fn state_name(s: InitialState) -> &'static str {
    match s {
        InitialState::Ket001 => "001",
        InitialState::Ket100 => "100",
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    Table1,
    Table2,
    Table4,
    Fig1,
    Fig2,
}

impl Target {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "table1" => Ok(Target::Table1),
            "table2" => Ok(Target::Table2),
            "table4" => Ok(Target::Table4),
            "fig1" => Ok(Target::Fig1),
            "fig2" => Ok(Target::Fig2),
            _ => bail!(
                "unknown reproduce target `{s}` (expected table1, table2, table4, fig1 or fig2)"
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Command {
    Evaluate,
    Sweep {
        axis: String,
        from: Option<f64>,
        to: Option<f64>,
        steps: usize,
    },
    Maximize {
        target: String,
        /// Parameters to optimize over; `g` ties `g1 = g2`.
        vary: Vec<String>,
        points: Option<usize>,
    },
    Reproduce(Target),
    Audit,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunSpec {
    pub command: Command,
    pub scenario: Option<Scenario>,
    pub params: BTreeMap<String, f64>,
    pub rule: Option<Rule>,
    pub state: Option<InitialState>,
    pub output: Format,
    pub output_path: Option<PathBuf>,
}

impl RunSpec {
    pub fn new(command: Command) -> Self {
        Self {
            command,
            scenario: None,
            params: BTreeMap::new(),
            rule: None,
            state: None,
            output: Format::Csv,
            output_path: None,
        }
    }

    pub fn scenario(&self) -> Result<Scenario> {
        self.scenario
            .ok_or_else(|| anyhow!("missing required field: scenario"))
    }

    pub fn rule(&self) -> Result<Rule> {
        self.rule
            .ok_or_else(|| anyhow!("missing required field: rule"))
    }

    pub fn param(&self, name: &str) -> Result<f64> {
        self.params
            .get(name)
            .copied()
            .ok_or_else(|| anyhow!("missing required field: {name}"))
    }

    /// Reject parameters that do not belong to the scenario, and check that
    /// every parameter not in `free` is present.
    pub fn check_params(&self, free: &[&str]) -> Result<Scenario> {
        let sc = self.scenario()?;
        for name in self.params.keys() {
            if !sc.parameters().contains(&name.as_str()) {
                bail!("parameter `{name}` does not apply to this scenario");
            }
        }
        for name in sc.parameters() {
            let tied = free.contains(&"g") && (*name == "g1" || *name == "g2");
            if !free.contains(name) && !tied {
                self.param(name)?;
            }
        }
        self.rule()?;
        if sc == Scenario::Lgi && self.state.is_none() {
            bail!("missing required field: state");
        }
        Ok(sc)
    }

    /// Parameter values with overrides applied (`g` sets both couplings).
    pub fn values_with(&self, overrides: &[(&str, f64)]) -> BTreeMap<String, f64> {
        let mut v = self.params.clone();
        for (k, x) in overrides {
            if *k == "g" {
                v.insert("g1".into(), *x);
                v.insert("g2".into(), *x);
            } else {
                v.insert((*k).into(), *x);
            }
        }
        v
    }

    pub fn lgi_params(&self, values: &BTreeMap<String, f64>) -> Result<LgiParams> {
        let get = |k: &str| {
            values
                .get(k)
                .copied()
                .ok_or_else(|| anyhow!("missing required field: {k}"))
        };
        Ok(LgiParams::new(
            get("g1")?,
            get("g2")?,
            get("xi")?,
            self.state
                .ok_or_else(|| anyhow!("missing required field: state"))?,
            self.rule()?,
        ))
    }

    pub fn nci_params(&self, values: &BTreeMap<String, f64>) -> Result<NciParams> {
        let get = |k: &str| {
            values
                .get(k)
                .copied()
                .ok_or_else(|| anyhow!("missing required field: {k}"))
        };
        Ok(NciParams::new(
            get("theta")?,
            get("phi")?,
            get("eps")?,
            get("lam")?,
            get("del")?,
            self.rule()?,
        ))
    }
}
