//! Algebra presentations: an ordered generator table plus one exchange rule
//! per ordered pair of generators.
//!
//! A rule for `(hi, lo)` with `hi > lo` reads
//! `g_hi g_lo -> coeff * g_lo g_hi + delta * 1`.
//! Every word therefore has a unique normal form: generators sorted by
//! index, nilpotent generators with exponent at most one, and the Laurent
//! generator (if any) collected in a single integer exponent slot.

use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::grading::Degree;
use crate::scalar::QScalar;

/// Environment variable naming an extra directory of presentation files.
pub const PRESENTATION_PATH_VAR: &str = "Z2Q_PRESENTATION_PATH";

pub const BUILTIN_NAMES: [&str; 6] = [
    "dqsp",
    "dqsp-ext",
    "dqsp-omega",
    "dqsp-ops",
    "manin-sp",
    "z22-commutative",
];

fn builtin_source(name: &str) -> Option<&'static str> {
    Some(match name {
        "dqsp" => include_str!("../../presentations/dqsp.json"),
        "dqsp-ext" => include_str!("../../presentations/dqsp-ext.json"),
        "dqsp-omega" => include_str!("../../presentations/dqsp-omega.json"),
        "dqsp-ops" => include_str!("../../presentations/dqsp-ops.json"),
        "manin-sp" => include_str!("../../presentations/manin-sp.json"),
        "z22-commutative" => include_str!("../../presentations/z22-commutative.json"),
        _ => return None,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum GeneratorKind {
    #[default]
    Coordinate,
    Differential,
    Partial,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorInfo {
    pub symbol: String,
    pub index: usize,
    pub degree: Degree,
    pub form_degree: u32,
    pub nilpotent: bool,
    /// Exponent ranges over all of `Z` (the generator is invertible).
    pub laurent: bool,
    pub kind: GeneratorKind,
    /// For differentials and partials: the coordinate they belong to.
    pub base: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExchangeRule {
    pub hi: usize,
    pub lo: usize,
    pub coeff: QScalar,
    pub delta: QScalar,
}

/// On-disk form of a presentation.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationSpec {
    pub name: String,
    pub generators: Vec<GeneratorSpec>,
    pub rules: Vec<RuleSpec>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorSpec {
    pub symbol: String,
    pub degree: DegreeSpec,
    #[serde(default)]
    pub form_degree: u32,
    #[serde(default)]
    pub nilpotent: bool,
    #[serde(default)]
    pub laurent: bool,
    #[serde(default)]
    pub kind: GeneratorKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DegreeSpec {
    Text(String),
    Bits(Vec<u8>),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GeneratorRef {
    Index(usize),
    Symbol(String),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RuleSpec {
    pub hi: GeneratorRef,
    pub lo: GeneratorRef,
    pub coeff: String,
    #[serde(default = "zero_text")]
    pub delta: String,
}

fn zero_text() -> String {
    "0".to_string()
}

#[derive(Debug)]
pub struct Presentation {
    name: String,
    generators: Vec<GeneratorInfo>,
    rules: Vec<ExchangeRule>,
    /// `table[hi * n + lo]` is the index into `rules` of the rule used for rewriting.
    table: Vec<Option<usize>>,
    degree_len: usize,
    symbols: HashMap<String, usize>,
}

impl Presentation {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn generators(&self) -> &[GeneratorInfo] {
        &self.generators
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn generator(&self, index: usize) -> &GeneratorInfo {
        &self.generators[index]
    }

    pub fn rules(&self) -> &[ExchangeRule] {
        &self.rules
    }

    /// Length `n` of the `Z_2^n` grading.
    pub fn degree_len(&self) -> usize {
        self.degree_len
    }

    pub fn index_of(&self, symbol: &str) -> Option<usize> {
        self.symbols.get(symbol).copied()
    }

    pub fn rule(&self, hi: usize, lo: usize) -> &ExchangeRule {
        let n = self.generators.len();
        let idx = self.table[hi * n + lo].expect("rule table is total");
        &self.rules[idx]
    }

    /// Every rule stored for `(hi, lo)`; more than one means an inclusion ambiguity.
    pub fn rules_for(&self, hi: usize, lo: usize) -> impl Iterator<Item = &ExchangeRule> {
        self.rules.iter().filter(move |r| r.hi == hi && r.lo == lo)
    }

    pub fn has_laurent(&self) -> bool {
        self.generators.iter().any(|g| g.laurent)
    }

    /// Generator index of the object of `kind` attached to coordinate `base`.
    pub fn attached(&self, kind: GeneratorKind, base: usize) -> Option<usize> {
        self.generators
            .iter()
            .find(|g| g.kind == kind && g.base == Some(base))
            .map(|g| g.index)
    }

    /// Parses, validates and checks local confluence.
    pub fn from_spec(spec: &PresentationSpec) -> Result<Arc<Presentation>, Error> {
        let p = Arc::new(Self::from_spec_unchecked(spec)?);
        let report = crate::engine::check_local_confluence(&p);
        if let Some(fail) = report.failures.first() {
            return Err(Error::NotConfluent {
                name: p.name.clone(),
                detail: format!(
                    "overlap {} reduces to {} and to {} ({} failing overlaps)",
                    fail.overlap,
                    fail.left,
                    fail.right,
                    report.failures.len()
                ),
            });
        }
        Ok(p)
    }

    /// Parses and validates without running the confluence check.
    ///
    /// Duplicate rules for one pair are accepted here and show up as
    /// inclusion ambiguities in [`crate::engine::check_local_confluence`].
    pub fn from_spec_unchecked(spec: &PresentationSpec) -> Result<Presentation, Error> {
        let bad = |msg: String| Error::Malformed(format!("{}: {msg}", spec.name));
        if spec.generators.is_empty() {
            return Err(bad("no generators".into()));
        }
        let mut symbols = HashMap::new();
        for (i, g) in spec.generators.iter().enumerate() {
            if !is_identifier(&g.symbol) {
                return Err(bad(format!("generator symbol {:?} is not an identifier", g.symbol)));
            }
            if symbols.insert(g.symbol.clone(), i).is_some() {
                return Err(bad(format!("duplicate generator {:?}", g.symbol)));
            }
        }
        let lookup = |r: &GeneratorRef| -> Result<usize, Error> {
            match r {
                GeneratorRef::Index(i) if *i < spec.generators.len() => Ok(*i),
                GeneratorRef::Index(i) => Err(bad(format!("generator index {i} out of range"))),
                GeneratorRef::Symbol(s) => symbols
                    .get(s)
                    .copied()
                    .ok_or_else(|| bad(format!("unknown generator {s:?} in rule"))),
            }
        };

        let mut generators = Vec::with_capacity(spec.generators.len());
        let mut degree_len = None;
        for (index, g) in spec.generators.iter().enumerate() {
            let degree = match &g.degree {
                DegreeSpec::Text(t) => t.parse::<Degree>()?,
                DegreeSpec::Bits(bits) => {
                    if bits.iter().any(|b| *b > 1) || bits.len() > crate::grading::MAX_BITS {
                        return Err(bad(format!("bad degree for {:?}", g.symbol)));
                    }
                    Degree::new(bits)
                }
            };
            match degree_len {
                None => degree_len = Some(degree.len()),
                Some(n) if n != degree.len() => {
                    return Err(bad(format!("degree of {:?} has length {}, expected {n}", g.symbol, degree.len())))
                }
                _ => {}
            }
            if g.nilpotent && g.laurent {
                return Err(bad(format!("{:?} cannot be both nilpotent and Laurent", g.symbol)));
            }
            let base = match &g.base {
                Some(s) => Some(
                    symbols
                        .get(s)
                        .copied()
                        .ok_or_else(|| bad(format!("unknown base {s:?} for {:?}", g.symbol)))?,
                ),
                None => None,
            };
            generators.push(GeneratorInfo {
                symbol: g.symbol.clone(),
                index,
                degree,
                form_degree: g.form_degree,
                nilpotent: g.nilpotent,
                laurent: g.laurent,
                kind: g.kind,
                base,
            });
        }
        let degree_len = degree_len.unwrap_or(0);

        // Form-degree parity must be the leading Z_2^3 entry, so that the
        // Leibniz sign (-1)^p agrees with the Koszul sign against d.
        for g in &generators {
            let consistent = if degree_len == 3 {
                g.degree.entry(0) as u32 == g.form_degree % 2
            } else {
                g.form_degree == 0
            };
            if !consistent {
                return Err(bad(format!(
                    "form degree {} of {:?} disagrees with degree {}",
                    g.form_degree, g.symbol, g.degree
                )));
            }
            match (g.kind, g.base) {
                (GeneratorKind::Coordinate, None) => {}
                (GeneratorKind::Coordinate, Some(_)) => {
                    return Err(bad(format!("coordinate {:?} cannot have a base", g.symbol)))
                }
                (_, None) => return Err(bad(format!("{:?} needs a base coordinate", g.symbol))),
                (kind, Some(b)) => {
                    let base = &generators[b];
                    if base.kind != GeneratorKind::Coordinate || g.laurent {
                        return Err(bad(format!("bad base for {:?}", g.symbol)));
                    }
                    let expected = if kind == GeneratorKind::Differential {
                        let mut d = vec![0u8; degree_len];
                        if degree_len > 0 {
                            d[0] = 1;
                        }
                        (Degree::new(&d).add(&base.degree)?, 1)
                    } else {
                        (base.degree, 0)
                    };
                    if (g.degree, g.form_degree) != expected {
                        return Err(bad(format!(
                            "{:?} must have degree {} and form degree {}",
                            g.symbol, expected.0, expected.1
                        )));
                    }
                }
            }
        }

        let n = generators.len();
        let mut rules = Vec::with_capacity(spec.rules.len());
        let mut table = vec![None; n * n];
        for r in &spec.rules {
            let hi = lookup(&r.hi)?;
            let lo = lookup(&r.lo)?;
            let label = format!("{} {}", generators[hi].symbol, generators[lo].symbol);
            if hi <= lo {
                return Err(bad(format!("rule {label}: hi must come after lo in generator order")));
            }
            let coeff: QScalar = r.coeff.parse()?;
            let delta: QScalar = r.delta.parse()?;
            if coeff.is_zero() {
                return Err(bad(format!("rule {label}: zero exchange coefficient")));
            }
            let (gh, gl) = (&generators[hi], &generators[lo]);
            if !delta.is_zero() && !(gh.kind == GeneratorKind::Partial && gh.base == Some(lo)) {
                return Err(bad(format!(
                    "rule {label}: only a partial and its own coordinate may carry a delta term"
                )));
            }
            if (gh.laurent || gl.laurent) && !coeff.is_unit() {
                return Err(bad(format!("rule {label}: Laurent exchange coefficient must be a unit")));
            }
            if table[hi * n + lo].is_none() {
                table[hi * n + lo] = Some(rules.len());
            }
            rules.push(ExchangeRule { hi, lo, coeff, delta });
        }
        for hi in 0..n {
            for lo in 0..hi {
                if table[hi * n + lo].is_none() {
                    return Err(bad(format!(
                        "no exchange rule for {} {}",
                        generators[hi].symbol, generators[lo].symbol
                    )));
                }
            }
        }

        Ok(Presentation {
            name: spec.name.clone(),
            generators,
            rules,
            table,
            degree_len,
            symbols,
        })
    }

    pub fn from_json(text: &str) -> Result<Arc<Presentation>, Error> {
        let spec: PresentationSpec =
            serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
        Self::from_spec(&spec)
    }

    pub fn load_file(path: &Path) -> Result<Arc<Presentation>, Error> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_json(&text)
    }

    /// Shared instance of a builtin presentation.
    pub fn builtin(name: &str) -> Result<Arc<Presentation>, Error> {
        static CACHE: OnceLock<Mutex<HashMap<String, Arc<Presentation>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(p) = cache.lock().expect("cache lock").get(name) {
            return Ok(p.clone());
        }
        let src = builtin_source(name).ok_or_else(|| Error::UnknownPresentation(name.to_string()))?;
        let p = Self::from_json(src)?;
        cache
            .lock()
            .expect("cache lock")
            .entry(name.to_string())
            .or_insert(p.clone());
        Ok(p)
    }

    /// The JSON text a builtin was loaded from.
    pub fn builtin_json(name: &str) -> Option<&'static str> {
        builtin_source(name)
    }

    /// Resolves a builtin name, a file path, or `NAME.json` inside the
    /// directory named by `Z2Q_PRESENTATION_PATH`.
    pub fn load(name_or_path: &str) -> Result<Arc<Presentation>, Error> {
        if builtin_source(name_or_path).is_some() {
            return Self::builtin(name_or_path);
        }
        let direct = PathBuf::from(name_or_path);
        if direct.is_file() {
            return Self::load_file(&direct);
        }
        if let Ok(dir) = std::env::var(PRESENTATION_PATH_VAR) {
            for candidate in [
                Path::new(&dir).join(name_or_path),
                Path::new(&dir).join(format!("{name_or_path}.json")),
            ] {
                if candidate.is_file() {
                    return Self::load_file(&candidate);
                }
            }
        }
        Err(Error::UnknownPresentation(name_or_path.to_string()))
    }

    pub fn to_spec(&self) -> PresentationSpec {
        PresentationSpec {
            name: self.name.clone(),
            generators: self
                .generators
                .iter()
                .map(|g| GeneratorSpec {
                    symbol: g.symbol.clone(),
                    degree: DegreeSpec::Text(g.degree.to_string()),
                    form_degree: g.form_degree,
                    nilpotent: g.nilpotent,
                    laurent: g.laurent,
                    kind: g.kind,
                    base: g.base.map(|b| self.generators[b].symbol.clone()),
                })
                .collect(),
            rules: self
                .rules
                .iter()
                .map(|r| RuleSpec {
                    hi: GeneratorRef::Symbol(self.generators[r.hi].symbol.clone()),
                    lo: GeneratorRef::Symbol(self.generators[r.lo].symbol.clone()),
                    coeff: r.coeff.to_string(),
                    delta: r.delta.to_string(),
                })
                .collect(),
        }
    }

    pub fn same_as(&self, other: &Presentation) -> bool {
        std::ptr::eq(self, other) || self.name == other.name
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
        && s != "q"
}
