use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use serde_json::{json, Map, Value};

use klab::{config_from_value, run_streaming, CliError, CsvSink};

/// Run Kloosterman-sum experiments described by a JSON config.
#[derive(Debug, Parser)]
#[command(name = "klab", version)]
struct Args {
    /// JSON configuration file; flags below override its keys.
    config: Option<PathBuf>,
    #[arg(long)]
    mode: Option<String>,
    #[arg(long)]
    p: Option<u64>,
    #[arg(long)]
    k: Option<u32>,
    #[arg(long, allow_hyphen_values = true)]
    a: Option<i64>,
    #[arg(long = "X")]
    x: Option<u64>,
    #[arg(long = "M")]
    big_m: Option<u64>,
    #[arg(long = "N")]
    big_n: Option<u64>,
    #[arg(long = "U")]
    big_u: Option<u64>,
    #[arg(long = "V")]
    big_v: Option<u64>,
    /// Seed for rademacher weights.
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads; defaults to $KLAB_WORKERS, then 1.
    #[arg(long)]
    workers: Option<usize>,
    /// Output CSV path; stdout when absent or "-".
    #[arg(long)]
    out: Option<String>,
    #[arg(long = "s-override")]
    s_override: Option<u32>,
}

fn load(args: &Args) -> Result<Map<String, Value>, CliError> {
    let Some(path) = &args.config else {
        return Ok(Map::new());
    };
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    match serde_json::from_str(&text) {
        Ok(Value::Object(map)) => Ok(map),
        Ok(_) => Err(CliError::Parse("configuration must be a JSON object".into())),
        Err(e) => Err(CliError::Parse(format!("{}: {e}", path.display()))),
    }
}

fn apply_overrides(args: &Args, doc: &mut Map<String, Value>) {
    let mut set = |key: &str, value: Option<Value>| {
        if let Some(v) = value {
            doc.insert(key.to_string(), v);
        }
    };
    set("mode", args.mode.clone().map(Value::from));
    set("p", args.p.map(Value::from));
    set("k", args.k.map(Value::from));
    set("a", args.a.map(Value::from));
    set("X", args.x.map(Value::from));
    set("M", args.big_m.map(Value::from));
    set("N", args.big_n.map(Value::from));
    set("U", args.big_u.map(Value::from));
    set("V", args.big_v.map(Value::from));
    set("workers", args.workers.map(Value::from));
    set("out", args.out.clone().map(Value::from));
    set("s_override", args.s_override.map(Value::from));

    if let Some(seed) = args.seed {
        let mut touched = false;
        for key in ["weights_a", "weights_b"] {
            if let Some(Value::Object(spec)) = doc.get_mut(key) {
                if spec.get("kind") == Some(&Value::from("rademacher")) {
                    spec.insert("seed".into(), Value::from(seed));
                    touched = true;
                }
            }
        }
        if !touched && !doc.contains_key("weights_a") && !doc.contains_key("weights_b") {
            let spec = json!({"kind": "rademacher", "seed": seed});
            doc.insert("weights_a".into(), spec.clone());
            doc.insert("weights_b".into(), spec);
        }
    }

    if !doc.contains_key("workers") {
        if let Some(w) = std::env::var("KLAB_WORKERS").ok().and_then(|w| w.parse::<usize>().ok()) {
            doc.insert("workers".into(), Value::from(w));
        }
    }
}

fn execute(args: &Args) -> Result<(), CliError> {
    let mut doc = load(args)?;
    apply_overrides(args, &mut doc);
    let config = config_from_value(Value::Object(doc))?;
    let out: Box<dyn Write> = match config.out.as_deref() {
        None | Some("-") => Box::new(std::io::stdout().lock()),
        Some(path) => Box::new(
            std::fs::File::create(path).map_err(|e| CliError::Io(format!("{path}: {e}")))?,
        ),
    };
    let mut sink = CsvSink::new(out)?;
    run_streaming(&config, |row| sink.push(&row))
}

fn main() -> ExitCode {
    let args = Args::parse();
    match execute(&args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("{}", err.one_line());
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
