//! Turning command-line arguments into spaces, rules and profiles.

use std::fs;
use std::path::Path;

use semimed::{
    ContextOptions, Flavor, GroundSet, MedianContext, Poset, ProfileJson, RelationSpace, RuleSpec,
    SpaceOptions, SpaceSpec, Target, TieBreak,
};
use serde_json::Value;

use crate::args::{ProfileArgs, RuleArgs, SpaceArgs};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] semimed::Error),
    #[error("{0}")]
    Input(String),
    #[error("reading {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("parsing {what}: {source}")]
    Json {
        what: String,
        source: serde_json::Error,
    },
}

pub type CliResult<T> = Result<T, CliError>;

pub fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn json<T: serde::de::DeserializeOwned>(what: &str, text: &str) -> CliResult<T> {
    serde_json::from_str(text).map_err(|source| CliError::Json {
        what: what.into(),
        source,
    })
}

/// Either a relation space or an abstract semilattice read from a poset.
pub enum Loaded {
    Space(RelationSpace),
    Abstract(MedianContext),
}

impl Loaded {
    pub fn target(&self) -> Target<'_> {
        match self {
            Loaded::Space(s) => Target::Space(s),
            Loaded::Abstract(c) => Target::Context(c),
        }
    }

    pub fn ctx(&self) -> &MedianContext {
        self.target().ctx()
    }

    pub fn space(&self) -> Option<&RelationSpace> {
        match self {
            Loaded::Space(s) => Some(s),
            Loaded::Abstract(_) => None,
        }
    }

    pub fn render(&self, i: usize) -> String {
        match self {
            Loaded::Space(s) => s.render(i),
            Loaded::Abstract(c) => c.poset().label(i).to_string(),
        }
    }

    pub fn parse_element(&self, s: &str) -> CliResult<usize> {
        match self {
            Loaded::Space(sp) => Ok(sp.parse_element(s)?),
            Loaded::Abstract(c) => {
                let s = s.trim();
                if let Ok(i) = s.parse::<usize>() {
                    if i < c.len() {
                        return Ok(i);
                    }
                }
                c.poset()
                    .labels()
                    .iter()
                    .position(|l| l == s)
                    .ok_or_else(|| CliError::Input(format!("no element `{s}`")))
            }
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Loaded::Space(s) => format!("{} on {{{}}}", s.flavor(), s.ground().names().join(",")),
            Loaded::Abstract(c) => format!("poset with {} elements", c.len()),
        }
    }
}

pub fn load_space(args: &SpaceArgs, default: (Flavor, &str)) -> CliResult<Loaded> {
    let opts = SpaceOptions {
        allow_large: args.allow_large,
    };
    if let Some(path) = &args.space_file {
        let text = read(path)?;
        let v: Value = json("space file", &text)?;
        if v.get("leq").is_some() {
            let p: Poset = json("poset", &text)?;
            let ctx = MedianContext::with_options(
                p,
                ContextOptions {
                    allow_large: args.allow_large,
                },
            )?;
            return Ok(Loaded::Abstract(ctx));
        }
        let spec: SpaceSpec = json("space spec", &text)?;
        return Ok(Loaded::Space(RelationSpace::from_spec(&spec, opts)?));
    }
    let flavor = match &args.flavor {
        Some(f) => f.parse::<Flavor>()?,
        None => default.0,
    };
    let ground = GroundSet::parse(args.ground.as_deref().unwrap_or(default.1))?;
    Ok(Loaded::Space(RelationSpace::new(flavor, ground, opts)?))
}

pub fn parse_tiebreak(loaded: &Loaded, s: Option<&str>) -> CliResult<TieBreak> {
    match s.map(str::trim) {
        None | Some("default") | Some("canonical") => Ok(TieBreak::Canonical),
        Some("reversed") => Ok(TieBreak::Reversed),
        Some(list) => Ok(TieBreak::Order(
            split_votes(list)
                .map(|e| loaded.parse_element(e))
                .collect::<CliResult<_>>()?,
        )),
    }
}

pub fn load_rule(loaded: &Loaded, args: &RuleArgs) -> CliResult<RuleSpec> {
    let text = match (&args.rule, &args.rule_file) {
        (Some(r), _) => r.clone(),
        (None, Some(path)) => read(path)?,
        (None, None) => return Err(CliError::Input("no rule given".into())),
    };
    let text = text.trim();
    if text.starts_with('{') {
        return json("rule", text);
    }
    let tiebreak = parse_tiebreak(loaded, args.tiebreak.as_deref())?;
    let (name, arg) = match text.split_once(':') {
        Some((n, a)) => (n, Some(a)),
        None => (text, None),
    };
    let need = |what: &str| arg.ok_or_else(|| CliError::Input(format!("`{name}` needs `:{what}`")));
    let spec = match name.to_ascii_lowercase().replace('_', "-").as_str() {
        "comajority" | "co-majority" => RuleSpec::CoMajority,
        "ck" | "kemeny" | "generalized-ck" => RuleSpec::GeneralizedCk { tiebreak },
        "strict-ck" => RuleSpec::StrictCk { tiebreak },
        "majority" => RuleSpec::MajorityLattice,
        "dictator" => RuleSpec::Dictator {
            agent: need("agent")?
                .parse()
                .map_err(|_| CliError::Input("dictator agent must be an index".into()))?,
        },
        "constant" => RuleSpec::Constant {
            element: loaded.parse_element(need("element")?)?,
        },
        "quota" => {
            let q = need("q")?
                .parse()
                .map_err(|_| CliError::Input("quota must be a number".into()))?;
            RuleSpec::uniform_quota(loaded.ctx(), q)
        }
        other => return Err(CliError::Input(format!("unknown rule `{other}`"))),
    };
    Ok(spec)
}

fn split_votes(s: &str) -> impl Iterator<Item = &str> {
    s.split(',').map(str::trim).filter(|v| !v.is_empty())
}

pub fn load_profile(loaded: &Loaded, args: &ProfileArgs) -> CliResult<Vec<usize>> {
    let text = match (&args.profile, &args.profile_file) {
        (Some(p), _) => p.clone(),
        (None, Some(path)) => read(path)?,
        (None, None) => return Err(CliError::Input("no profile given".into())),
    };
    let text = text.trim();
    if text.starts_with('{') {
        let pj: ProfileJson = json("profile", text)?;
        let space = loaded
            .space()
            .ok_or_else(|| CliError::Input("profile JSON needs a relation space".into()))?;
        return Ok(pj.resolve(space)?);
    }
    let votes: Vec<usize> = split_votes(text)
        .map(|v| loaded.parse_element(v))
        .collect::<CliResult<_>>()?;
    if votes.is_empty() {
        return Err(CliError::Input("empty profile".into()));
    }
    Ok(votes)
}
