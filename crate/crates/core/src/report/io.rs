//! File formats: signal JSON `{"n": .., "values": [..]}` (integer literals
//! for integer-valued signals), spectrum CSV `r,re,im,abs`, report JSON.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Number;

use crate::error::{Error, Result};
use crate::spectra::Spectrum;
use crate::zn::{make_modulus, ZnSignal};

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> Error + '_ {
    move |source| Error::Io { path: path.display().to_string(), source }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SignalFile {
    n: u64,
    values: Vec<Number>,
}

pub fn signal_to_json(s: &ZnSignal) -> String {
    let values = match s.int_values() {
        Some(ints) => ints.into_iter().map(Number::from).collect(),
        None => s
            .values()
            .iter()
            .map(|&v| Number::from_f64(v).expect("signal values are finite"))
            .collect(),
    };
    serde_json::to_string(&SignalFile { n: s.modulus().get(), values }).expect("serializable")
}

/// Integer literals load as an exact signal, anything else as reals.
pub fn signal_from_json(text: &str) -> Result<ZnSignal> {
    let file: SignalFile = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
    let m = make_modulus(file.n)?;
    if file.values.len() != m.len() {
        return Err(Error::LengthMismatch { expected: m.get(), got: file.values.len() });
    }
    if file.values.iter().all(|v| v.is_i64()) {
        ZnSignal::from_ints(m, file.values.iter().map(|v| v.as_i64().expect("checked")).collect())
    } else {
        let reals = file
            .values
            .iter()
            .map(|v| v.as_f64().ok_or_else(|| Error::Format(format!("value {v} is not a number"))))
            .collect::<Result<Vec<f64>>>()?;
        ZnSignal::from_reals(m, reals)
    }
}

pub fn export_signal(s: &ZnSignal, path: &Path) -> Result<()> {
    std::fs::write(path, signal_to_json(s)).map_err(io_err(path))
}

pub fn load_signal(path: &Path) -> Result<ZnSignal> {
    signal_from_json(&std::fs::read_to_string(path).map_err(io_err(path))?)
}

pub fn export_spectrum(sp: &Spectrum, path: &Path) -> Result<()> {
    let file = File::create(path).map_err(io_err(path))?;
    let mut w = BufWriter::new(file);
    sp.write_csv(&mut w).and_then(|_| w.flush()).map_err(io_err(path))
}

/// Pretty JSON with a trailing newline.
pub fn export_json<T: Serialize>(value: &T, path: &Path) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value).expect("serializable");
    text.push('\n');
    std::fs::write(path, text).map_err(io_err(path))
}

pub fn load_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).map_err(io_err(path))?;
    serde_json::from_str(&text).map_err(|e| Error::Format(format!("{}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectra::dft;
    use crate::zn::Modulus;

    #[test]
    fn exact_signals_use_integer_literals() {
        let m = Modulus::new(7).unwrap();
        let s = ZnSignal::from_ints(m, vec![0, 1, -1, 0, 4, 0, 0]).unwrap();
        let text = signal_to_json(&s);
        assert_eq!(text, r#"{"n":7,"values":[0,1,-1,0,4,0,0]}"#);
        let back = signal_from_json(&text).unwrap();
        assert_eq!(back, s);
        assert!(back.is_exact());
    }

    #[test]
    fn real_signals_round_trip_bit_exactly() {
        let m = Modulus::new(11).unwrap();
        let s = ZnSignal::from_fn(m, |x| (x as f64 * 0.37).sin() / 3.0);
        let back = signal_from_json(&signal_to_json(&s)).unwrap();
        assert!(s.values().iter().zip(back.values()).all(|(a, b)| a.to_bits() == b.to_bits()));
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(matches!(signal_from_json(r#"{"n":7,"values":[1,2]}"#), Err(Error::LengthMismatch { .. })));
        assert!(matches!(signal_from_json(r#"{"n":9,"values":[]}"#), Err(Error::NotPrime(9))));
        assert!(matches!(signal_from_json(r#"{"n":5,"values":[0,0,0,0,0],"x":1}"#), Err(Error::Format(_))));
        assert!(matches!(signal_from_json("not json"), Err(Error::Format(_))));
    }

    #[test]
    fn spectrum_csv_has_one_row_per_frequency() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("s.csv");
        let m = Modulus::new(13).unwrap();
        export_spectrum(&dft(&ZnSignal::indicator(m, [1, 2, 5])), &path).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert_eq!(text.lines().count(), 14);
        assert_eq!(text.lines().next(), Some("r,re,im,abs"));
    }

    #[test]
    fn unwritable_path_is_io_failure() {
        let m = Modulus::new(5).unwrap();
        let err = export_signal(&ZnSignal::zeros(m), Path::new("/nonexistent/dir/x.json")).unwrap_err();
        assert!(matches!(err, Error::Io { .. }));
        assert!(matches!(load_signal(Path::new("/nonexistent/x.json")), Err(Error::Io { .. })));
    }
}
