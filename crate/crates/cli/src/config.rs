use anyhow::{bail, Context, Result};
use serde::Deserialize;

use envelope_core::ideals::IdealSpec;
use envelope_core::{field_make, Caps, DynCategory, Field, FieldSpec, FlavorKind};

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default)]
    pub category: CategoryConfig,
    #[serde(default)]
    pub job: JobConfig,
    #[serde(default)]
    pub caps: CapsConfig,
    #[serde(default)]
    pub output: OutputConfig,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategoryConfig {
    pub flavor: FlavorKind,
    pub field: FieldSpec,
    /// Loop value; falls back to `field.t`.
    #[serde(default)]
    pub t: Option<String>,
    #[serde(default)]
    pub ideal: Option<IdealConfig>,
    #[serde(default)]
    pub restricted_unit: bool,
}

impl Default for CategoryConfig {
    fn default() -> Self {
        CategoryConfig {
            flavor: FlavorKind::Brauer,
            field: FieldSpec::rationals(),
            t: None,
            ideal: None,
            restricted_unit: false,
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IdealConfig {
    Zero,
    Negligible,
    /// `⟨id_X⟩` for the word `X`.
    Principal(String),
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    #[serde(default)]
    pub check: Option<String>,
    /// Word for the object under test (default `+`).
    #[serde(default)]
    pub object: Option<String>,
    #[serde(default)]
    pub degree: Option<usize>,
    #[serde(default)]
    pub p: Option<u64>,
    #[serde(default)]
    pub r: Option<u32>,
    #[serde(default)]
    pub i: Option<usize>,
    #[serde(default)]
    pub max_label: Option<usize>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CapsConfig {
    pub max_hom_dim: usize,
    pub max_points: usize,
}

impl Default for CapsConfig {
    fn default() -> Self {
        let c = Caps::default();
        CapsConfig { max_hom_dim: c.max_hom_dim, max_points: c.max_points }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Text,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    #[serde(default)]
    pub path: Option<String>,
    #[serde(default)]
    pub format: Format,
}

/// Command-line overrides applied on top of the file.
#[derive(Clone, Debug, Default, clap::Args)]
pub struct Overrides {
    /// JSON run configuration
    #[arg(long)]
    pub config: Option<String>,
    /// Loop value t (a rational)
    #[arg(long)]
    pub t: Option<String>,
    /// Prime: switches the field to F_p, and sets p for sl2 checks
    #[arg(long)]
    pub p: Option<u64>,
    /// Degree bound
    #[arg(long)]
    pub degree: Option<usize>,
    /// Cap on hom-space dimension
    #[arg(long)]
    pub cap: Option<usize>,
    /// Certificate output path
    #[arg(long)]
    pub out: Option<String>,
}

impl RunConfig {
    pub fn load(o: &Overrides) -> Result<Self> {
        let mut cfg: RunConfig = match &o.config {
            Some(path) => {
                let text = std::fs::read_to_string(path).with_context(|| format!("reading config {path}"))?;
                let de = &mut serde_json::Deserializer::from_str(&text);
                serde_path_to_error::deserialize(de).map_err(|e| {
                    let at = e.path().to_string();
                    anyhow::anyhow!("{at}: {}", e.into_inner()).context(format!("config {path}"))
                })?
            }
            None => RunConfig::default(),
        };
        if let Some(t) = &o.t {
            cfg.category.t = Some(t.clone());
        }
        if let Some(p) = o.p {
            cfg.category.field = FieldSpec::prime(p);
            cfg.job.p = Some(p);
        }
        if let Some(d) = o.degree {
            cfg.job.degree = Some(d);
        }
        if let Some(c) = o.cap {
            cfg.caps.max_hom_dim = c;
        }
        if let Some(out) = &o.out {
            cfg.output.path = Some(out.clone());
        }
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<()> {
        if self.caps.max_hom_dim == 0 {
            bail!("caps.max_hom_dim: must be positive");
        }
        if self.caps.max_points == 0 {
            bail!("caps.max_points: must be positive");
        }
        if let Some(w) = &self.job.object {
            envelope_core::Word::parse(w).context("job.object")?;
        }
        Ok(())
    }

    pub fn caps(&self) -> Caps {
        Caps { max_points: self.caps.max_points, max_hom_dim: self.caps.max_hom_dim }
    }

    pub fn degree(&self, default: usize) -> usize {
        self.job.degree.unwrap_or(default)
    }

    /// The configured category, quotiented and restricted as asked.
    pub fn category(&self) -> Result<DynCategory> {
        let c = &self.category;
        let field = field_make(&c.field).context("category.field")?;
        let t = match (&c.t, &c.field.t) {
            (Some(t), _) | (None, Some(t)) => t.clone(),
            (None, None) => bail!("category.t: missing loop value"),
        };
        let q = envelope_core::scalars::parse_rational(&t).context("category.t")?;
        let t = field.from_rational(&q).context("category.t")?;
        let mut cat = DynCategory::new(field, c.flavor, t).with_caps(self.caps());
        if c.restricted_unit {
            cat = cat.restrict_end_unit().context("category.restricted_unit")?;
        }
        let ideal = match &c.ideal {
            None | Some(IdealConfig::Zero) => return Ok(cat),
            Some(IdealConfig::Negligible) => IdealSpec::Negligible,
            Some(IdealConfig::Principal(w)) => IdealSpec::Principal(cat.word(w).context("category.ideal")?),
        };
        Ok(cat.quotient(ideal))
    }

    /// The check named on the command line, else `job.check`.
    pub fn check(&self, given: Option<String>) -> Result<String> {
        given.or_else(|| self.job.check.clone()).context("job.check: no check named")
    }

    pub fn object_word(&self) -> &str {
        self.job.object.as_deref().unwrap_or("+")
    }
}
