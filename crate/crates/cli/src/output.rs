use std::process::ExitCode;

use serde::Serialize;
use serde_json::Value;

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_TOLERANCE: u8 = 3;
pub const EXIT_CAPABILITY: u8 = 4;

#[derive(Serialize)]
pub struct CommandResult {
    pub status: &'static str,
    pub payload: Value,
    pub diagnostics: Vec<String>,
}

/// Why a command did not succeed.
pub enum Failure {
    Usage(String),
    Library(catrot::Error),
    /// The run completed but missed its tolerance; the payload is still
    /// reported.
    Tolerance { payload: Value, message: String },
}

impl From<catrot::Error> for Failure {
    fn from(e: catrot::Error) -> Self {
        Failure::Library(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Library(e.into())
    }
}

/// Rounds every non-integer number to 15 significant digits so that reports
/// diff cleanly across platforms.
pub fn round_floats(v: &mut Value) {
    match v {
        Value::Number(num) if num.is_f64() => {
            let x = num.as_f64().expect("f64 number");
            let rounded: f64 = format!("{x:.14e}").parse().expect("formatted float parses");
            *v = serde_json::Number::from_f64(rounded).map_or(Value::Null, Value::Number);
        }
        Value::Array(items) => items.iter_mut().for_each(round_floats),
        Value::Object(map) => map.values_mut().for_each(round_floats),
        _ => {}
    }
}

pub fn emit(outcome: Result<Value, Failure>) -> ExitCode {
    let (result, code) = match outcome {
        Ok(payload) => (CommandResult { status: "ok", payload, diagnostics: Vec::new() }, EXIT_OK),
        Err(Failure::Usage(msg)) => (error_result(Value::Null, msg), EXIT_USAGE),
        Err(Failure::Library(e)) => {
            let code = if e.is_capability() { EXIT_CAPABILITY } else { EXIT_USAGE };
            (error_result(Value::Null, e.to_string()), code)
        }
        Err(Failure::Tolerance { payload, message }) => (error_result(payload, message), EXIT_TOLERANCE),
    };
    let mut doc = serde_json::to_value(&result).expect("result serializes");
    round_floats(&mut doc);
    println!("{}", serde_json::to_string_pretty(&doc).expect("value prints"));
    ExitCode::from(code)
}

fn error_result(payload: Value, message: String) -> CommandResult {
    CommandResult { status: "error", payload, diagnostics: vec![message] }
}
