//! Flat key-value run configuration: one `key = value` per line, `#`
//! comments, dotted section prefixes (`chain.n`). Unknown keys are errors.

use gausschain::{ChainModel, ChainSpec, Engine};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Simulate,
    Decompose,
    Sweep,
    Tag,
    Validate,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Simulate => "simulate",
            Command::Decompose => "decompose",
            Command::Sweep => "sweep",
            Command::Tag => "tag",
            Command::Validate => "validate",
        }
    }

    fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "simulate" => Command::Simulate,
            "decompose" => Command::Decompose,
            "sweep" => Command::Sweep,
            "tag" => Command::Tag,
            "validate" => Command::Validate,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn name(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

/// Fully resolved run configuration. Scalar fields carry their defaults;
/// `Option` fields are genuinely optional.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Option<Command>,
    pub n: usize,
    pub omega: f64,
    pub kappa: f64,
    pub model: ChainModel,
    pub tau_start: f64,
    pub tau_end: f64,
    pub tau_step: f64,
    /// Pairs to evaluate; `None` means every `(1, j)`.
    pub pairs: Option<Vec<(usize, usize)>>,
    pub tagging: Option<f64>,
    pub record_blocks: bool,
    pub simulate_tau: Option<f64>,
    pub decompose_tau: Option<f64>,
    pub out: Option<String>,
    pub format: Format,
    pub engine: Engine,
}

impl RunConfig {
    pub fn chain_spec(&self) -> Result<ChainSpec, CliError> {
        ChainSpec::new(self.n, self.omega, self.kappa, self.model)
            .map_err(|e| CliError::Config(format!("chain: {e}")))
    }
}

fn config_err(line: usize, msg: impl AsRef<str>) -> CliError {
    CliError::Config(format!("line {line}: {}", msg.as_ref()))
}

/// Parses a configuration document. Errors carry the offending line number;
/// semantic errors name the key.
pub fn parse_config(text: &str) -> Result<RunConfig, CliError> {
    let mut command = None;
    let mut n: Option<usize> = None;
    let mut omega = 1.0;
    let mut kappa = 0.0;
    let mut model = ChainModel::Full;
    let mut tau_start = 0.0;
    let mut tau_end = 60.0;
    let mut tau_step = 0.01;
    let mut pairs = None;
    let mut tagging = None;
    let mut record_blocks = false;
    let mut simulate_tau = None;
    let mut decompose_tau = None;
    let mut out = None;
    let mut format = Format::Csv;
    let mut engine = Engine::Decomposition;

    let mut seen: Vec<String> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content
            .split_once('=')
            .ok_or_else(|| config_err(line, format!("expected 'key = value', got '{content}'")))?;
        let (key, value) = (key.trim(), value.trim());
        if value.is_empty() {
            return Err(config_err(line, format!("empty value for {key}")));
        }
        if seen.iter().any(|k| k == key) {
            return Err(config_err(line, format!("duplicate key {key}")));
        }
        seen.push(key.to_string());

        let num = |v: &str| -> Result<f64, CliError> {
            v.parse()
                .map_err(|_| config_err(line, format!("invalid number for {key}: '{v}'")))
        };
        let boolean = |v: &str| -> Result<bool, CliError> {
            match v {
                "true" => Ok(true),
                "false" => Ok(false),
                _ => Err(config_err(
                    line,
                    format!("invalid boolean for {key}: '{v}'"),
                )),
            }
        };

        match key {
            "command" => {
                command = Some(
                    Command::parse(value)
                        .ok_or_else(|| config_err(line, format!("unknown command '{value}'")))?,
                );
            }
            "chain.n" => {
                n = Some(value.parse().map_err(|_| {
                    config_err(line, format!("invalid integer for chain.n: '{value}'"))
                })?);
            }
            "chain.omega" => omega = num(value)?,
            "chain.kappa" => kappa = num(value)?,
            "chain.model" => {
                model = match value {
                    "full" => ChainModel::Full,
                    "rotating_wave" => ChainModel::RotatingWave,
                    _ => {
                        return Err(config_err(
                            line,
                            format!("chain.model must be full or rotating_wave, got '{value}'"),
                        ))
                    }
                };
            }
            "sweep.tau_start" => tau_start = num(value)?,
            "sweep.tau_end" => tau_end = num(value)?,
            "sweep.tau_step" => tau_step = num(value)?,
            "sweep.pairs" => {
                let mut parsed = Vec::new();
                for part in value.split(',') {
                    let (a, b) = part.trim().split_once('-').ok_or_else(|| {
                        config_err(line, format!("pair '{part}' must look like 1-3"))
                    })?;
                    let a = a
                        .trim()
                        .parse()
                        .map_err(|_| config_err(line, format!("invalid pair index '{a}'")))?;
                    let b = b
                        .trim()
                        .parse()
                        .map_err(|_| config_err(line, format!("invalid pair index '{b}'")))?;
                    parsed.push((a, b));
                }
                pairs = Some(parsed);
            }
            "sweep.r" => tagging = Some(num(value)?),
            "sweep.record_blocks" => record_blocks = boolean(value)?,
            "simulate.tau" => simulate_tau = Some(num(value)?),
            "decompose.tau" => decompose_tau = Some(num(value)?),
            "output.path" => out = Some(value.to_string()),
            "output.format" => {
                format = match value {
                    "csv" => Format::Csv,
                    "json" => Format::Json,
                    _ => {
                        return Err(config_err(
                            line,
                            format!("output.format must be csv or json, got '{value}'"),
                        ))
                    }
                };
            }
            "engine" => {
                engine = match value {
                    "decomposition" => Engine::Decomposition,
                    "oracle" => Engine::Oracle,
                    "both" => Engine::Both,
                    _ => {
                        return Err(config_err(
                            line,
                            format!("engine must be decomposition, oracle or both, got '{value}'"),
                        ))
                    }
                };
            }
            _ => return Err(config_err(line, format!("unknown key '{key}'"))),
        }
    }

    let n = n.ok_or_else(|| CliError::Config("missing required key chain.n".into()))?;
    let config = RunConfig {
        command,
        n,
        omega,
        kappa,
        model,
        tau_start,
        tau_end,
        tau_step,
        pairs,
        tagging,
        record_blocks,
        simulate_tau,
        decompose_tau,
        out,
        format,
        engine,
    };
    config.chain_spec()?;
    Ok(config)
}

/// Renders a configuration so that `parse_config(render_config(c)) == c`.
/// Exercised by the round-trip tests; the binary itself only parses.
#[cfg_attr(not(test), allow(dead_code))]
pub fn render_config(c: &RunConfig) -> String {
    let mut out = String::new();
    if let Some(cmd) = c.command {
        out.push_str(&format!("command = {}\n", cmd.name()));
    }
    out.push_str(&format!("chain.n = {}\n", c.n));
    out.push_str(&format!("chain.omega = {}\n", c.omega));
    out.push_str(&format!("chain.kappa = {}\n", c.kappa));
    out.push_str(&format!(
        "chain.model = {}\n",
        match c.model {
            ChainModel::Full => "full",
            ChainModel::RotatingWave => "rotating_wave",
        }
    ));
    out.push_str(&format!("sweep.tau_start = {}\n", c.tau_start));
    out.push_str(&format!("sweep.tau_end = {}\n", c.tau_end));
    out.push_str(&format!("sweep.tau_step = {}\n", c.tau_step));
    if let Some(pairs) = &c.pairs {
        let joined: Vec<String> = pairs.iter().map(|(a, b)| format!("{a}-{b}")).collect();
        out.push_str(&format!("sweep.pairs = {}\n", joined.join(",")));
    }
    if let Some(r) = c.tagging {
        out.push_str(&format!("sweep.r = {r}\n"));
    }
    out.push_str(&format!("sweep.record_blocks = {}\n", c.record_blocks));
    if let Some(t) = c.simulate_tau {
        out.push_str(&format!("simulate.tau = {t}\n"));
    }
    if let Some(t) = c.decompose_tau {
        out.push_str(&format!("decompose.tau = {t}\n"));
    }
    if let Some(path) = &c.out {
        out.push_str(&format!("output.path = {path}\n"));
    }
    out.push_str(&format!("output.format = {}\n", c.format.name()));
    out.push_str(&format!(
        "engine = {}\n",
        match c.engine {
            Engine::Decomposition => "decomposition",
            Engine::Oracle => "oracle",
            Engine::Both => "both",
        }
    ));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_config_gets_defaults() {
        let c =
            parse_config("chain.n = 3\nchain.omega = 1.0\nchain.kappa = 0.1\ncommand = sweep\n")
                .unwrap();
        assert_eq!(c.command, Some(Command::Sweep));
        assert_eq!(c.n, 3);
        assert_eq!(c.tau_end, 60.0);
        assert_eq!(c.tau_step, 0.01);
        assert_eq!(c.format, Format::Csv);
        assert_eq!(c.engine, Engine::Decomposition);
        assert!(c.pairs.is_none());
    }

    #[test]
    fn bad_number_names_line() {
        let err = parse_config("chain.n = 3\nchain.kappa = fast\n").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("line 2"), "{msg}");
        assert!(msg.contains("chain.kappa"), "{msg}");
    }

    #[test]
    fn unknown_and_duplicate_keys_rejected() {
        assert!(parse_config("chain.n = 3\nchain.kapa = 0.1\n").is_err());
        assert!(parse_config("chain.n = 3\nchain.n = 4\n").is_err());
        assert!(parse_config("chain.n = 3\nnonsense\n").is_err());
    }

    #[test]
    fn tagged_sweep_config() {
        let text = "chain.n = 3\nchain.omega = 1.0\nchain.kappa = 0.1\ncommand = tag\n\
                    sweep.tau_start = 40\nsweep.tau_end = 55\nsweep.r = 0.2\n\
                    sweep.record_blocks = true\nsweep.pairs = 1-2,1-3\n";
        let c = parse_config(text).unwrap();
        assert_eq!(c.tagging, Some(0.2));
        assert!(c.record_blocks);
        assert_eq!(c.pairs, Some(vec![(1, 2), (1, 3)]));
    }

    #[test]
    fn invalid_chain_rejected_semantically() {
        let err = parse_config("chain.n = 1\n").unwrap_err();
        assert!(err.to_string().contains("chain"));
    }

    #[test]
    fn render_parse_round_trip() {
        let samples = [
            "chain.n = 3\n",
            "chain.n = 4\nchain.kappa = 0.17\nchain.model = rotating_wave\nengine = both\n",
            "command = tag\nchain.n = 5\nchain.omega = 1.25\nchain.kappa = -0.1\n\
             sweep.tau_start = 1.5\nsweep.tau_end = 2.5\nsweep.tau_step = 0.125\n\
             sweep.pairs = 1-5,2-3\nsweep.r = 0.6\nsweep.record_blocks = true\n\
             simulate.tau = 3.5\ndecompose.tau = 0.25\noutput.path = out.csv\n\
             output.format = json\nengine = oracle\n",
        ];
        for text in samples {
            let c = parse_config(text).unwrap();
            let rendered = render_config(&c);
            assert_eq!(parse_config(&rendered).unwrap(), c, "{rendered}");
        }
    }

    #[test]
    fn comments_and_blank_lines_ignored() {
        let text = "# a comment\n\nchain.n = 3 # trailing\n   \n";
        assert_eq!(parse_config(text).unwrap().n, 3);
    }
}
