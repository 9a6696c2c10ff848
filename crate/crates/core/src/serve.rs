//! Line protocol for live tapping.
//!
//! A client streams its taps as text lines:
//!
//! ```text
//! MODE strict|relaxed   choose the decoder (default relaxed)
//! TEMPO <unit_ms>       fix the sixteenth duration instead of estimating it
//! TAP <onset_ms>        one tap, milliseconds from session start
//! END <ms>              close the session; answered by TEXT <decoded> or ERR <name>
//! RESET                 drop the taps collected so far
//! ```
//!
//! In relaxed mode a tap that completes another letter is answered with
//! `PARTIAL <text>`, the letters decoded so far. Malformed lines get
//! `ERR protocol-error`. Mode and tempo survive `END` and `RESET`.

use std::io::{self, BufRead, BufReader, Write};
use std::net::{TcpListener, TcpStream};
use std::sync::Arc;
use std::thread;

use crate::code::TapTable;
use crate::error::Error;
use crate::timing::{
    decode_session, relaxed_tokens, tokens_to_text, DecodeMode, RelaxedRatios, TapSession,
};

/// Protocol state of one connection.
#[derive(Debug, Clone)]
pub struct Connection {
    table: Arc<TapTable>,
    mode: DecodeMode,
    tempo: Option<f64>,
    session: TapSession,
    partial: Option<String>,
}

impl Connection {
    pub fn new(table: Arc<TapTable>) -> Self {
        Connection {
            table,
            mode: DecodeMode::default(),
            tempo: None,
            session: TapSession::empty(),
            partial: None,
        }
    }

    pub fn mode(&self) -> DecodeMode {
        self.mode
    }

    /// Handles one request line and returns the response lines.
    pub fn handle_line(&mut self, line: &str) -> Vec<String> {
        match self.dispatch(line.trim()) {
            Ok(responses) => responses,
            Err(e) => vec![format!("ERR {}", e.name())],
        }
    }

    fn dispatch(&mut self, line: &str) -> Result<Vec<String>, Error> {
        let mut parts = line.split_whitespace();
        let verb = parts.next().unwrap_or_default();
        let arg = parts.next();
        if parts.next().is_some() {
            return Err(Error::Protocol(format!("trailing arguments in `{line}`")));
        }
        let number = |arg: Option<&str>| -> Result<u64, Error> {
            arg.and_then(|a| a.parse().ok())
                .ok_or_else(|| Error::Protocol(format!("`{line}` needs a non-negative integer")))
        };
        match (verb, arg) {
            ("TAP", _) => {
                let onset = number(arg)?;
                self.session
                    .push(onset)
                    .map_err(|e| Error::Protocol(e.to_string()))?;
                Ok(self.partial_update())
            }
            ("END", _) => {
                let end = number(arg)?;
                self.session
                    .finish(end)
                    .map_err(|e| Error::Protocol(e.to_string()))?;
                let session = std::mem::take(&mut self.session);
                self.partial = None;
                let result = self.decode(&session);
                Ok(vec![match result {
                    Ok(text) => format!("TEXT {text}"),
                    Err(e) => format!("ERR {}", e.name()),
                }])
            }
            ("MODE", Some(m)) => {
                self.mode = m
                    .parse()
                    .map_err(|_| Error::Protocol(format!("mode `{m}`")))?;
                Ok(Vec::new())
            }
            ("TEMPO", _) => {
                let unit = number(arg)?;
                if unit == 0 {
                    return Err(Error::Protocol("tempo must be positive".into()));
                }
                self.tempo = Some(unit as f64);
                Ok(Vec::new())
            }
            ("RESET", None) => {
                self.session = TapSession::empty();
                self.partial = None;
                Ok(Vec::new())
            }
            _ => Err(Error::Protocol(format!("unknown request `{line}`"))),
        }
    }

    fn decode(&self, session: &TapSession) -> Result<String, Error> {
        let mut session = session.clone();
        session.set_unit(self.tempo)?;
        decode_session(&session, &self.table, self.mode)
    }

    /// After a tap in relaxed mode, reports the letters completed so far
    /// whenever they change. The letter still being tapped is left out.
    fn partial_update(&mut self) -> Vec<String> {
        if self.mode != DecodeMode::Relaxed || self.session.events().len() < 2 {
            return Vec::new();
        }
        let mut session = self.session.clone();
        let last = session.events().last().map_or(0, |e| e.onset_ms);
        if session.finish(last).is_err() || session.set_unit(self.tempo).is_err() {
            return Vec::new();
        }
        let Ok(mut tokens) = relaxed_tokens(&session, RelaxedRatios::default()) else {
            return Vec::new();
        };
        tokens.pop();
        let Ok(text) = tokens_to_text(&tokens, &self.table) else {
            return Vec::new();
        };
        if text.is_empty() || self.partial.as_deref() == Some(text.as_str()) {
            return Vec::new();
        }
        self.partial = Some(text.clone());
        vec![format!("PARTIAL {text}")]
    }
}

/// Runs the protocol over any line-oriented reader/writer pair until EOF.
pub fn run_connection<R: BufRead, W: Write>(
    table: Arc<TapTable>,
    reader: R,
    mut writer: W,
) -> io::Result<()> {
    let mut conn = Connection::new(table);
    for line in reader.lines() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        for response in conn.handle_line(&line) {
            writeln!(writer, "{response}")?;
        }
        writer.flush()?;
    }
    Ok(())
}

fn handle_client(table: Arc<TapTable>, stream: TcpStream) -> io::Result<()> {
    let reader = BufReader::new(stream.try_clone()?);
    run_connection(table, reader, stream)
}

/// Accepts clients forever, one thread and one independent session each.
pub fn serve(listener: TcpListener, table: Arc<TapTable>) -> io::Result<()> {
    for stream in listener.incoming() {
        let stream = stream?;
        let table = Arc::clone(&table);
        thread::spawn(move || {
            if let Err(e) = handle_client(table, stream) {
                eprintln!("connection closed: {e}");
            }
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::canonical_german_table;

    fn conn() -> Connection {
        Connection::new(Arc::new(canonical_german_table()))
    }

    fn script(c: &mut Connection, lines: &[&str]) -> Vec<String> {
        lines.iter().flat_map(|l| c.handle_line(l)).collect()
    }

    #[test]
    fn relaxed_letter_at_slow_tempo() {
        let mut c = conn();
        let out = script(
            &mut c,
            &[
                "MODE relaxed",
                "TEMPO 300",
                "TAP 0",
                "TAP 150",
                "TAP 700",
                "TAP 850",
                "END 2000",
            ],
        );
        assert_eq!(out, ["TEXT l"]);
    }

    #[test]
    fn strict_without_tempo() {
        let mut c = conn();
        let out = script(&mut c, &["MODE strict", "TAP 0", "END 640"]);
        assert_eq!(out, ["ERR insufficient-events"]);
    }

    #[test]
    fn reset_then_empty_end() {
        let mut c = conn();
        let out = script(&mut c, &["TAP 0", "TAP 150", "RESET", "END 100"]);
        assert_eq!(out, ["TEXT "]);
    }

    #[test]
    fn strict_grid_session() {
        let mut c = conn();
        // "en" = 1000 1100 at 100 ms per slot
        let out = script(
            &mut c,
            &[
                "MODE strict",
                "TEMPO 100",
                "TAP 0",
                "TAP 400",
                "TAP 500",
                "END 800",
            ],
        );
        assert_eq!(out, ["TEXT en"]);
    }

    #[test]
    fn partial_after_letter_gap() {
        let mut c = conn();
        // e n at 100 ms: taps at slots 0, 4, 5
        let out = script(
            &mut c,
            &["TEMPO 100", "TAP 0", "TAP 400", "TAP 500", "END 800"],
        );
        assert_eq!(out, ["PARTIAL e", "TEXT en"]);
    }

    #[test]
    fn protocol_errors() {
        let mut c = conn();
        for bad in [
            "TAP",
            "TAP x",
            "TAP -5",
            "MODE fast",
            "TEMPO 0",
            "HELLO",
            "RESET now",
            "END",
        ] {
            assert_eq!(c.handle_line(bad), ["ERR protocol-error"], "{bad}");
        }
        assert!(c.handle_line("TAP 100").is_empty());
        assert_eq!(c.handle_line("TAP 50"), ["ERR protocol-error"]);
        assert_eq!(c.handle_line("END 20"), ["ERR protocol-error"]);
    }

    #[test]
    fn unknown_pattern_reported() {
        let mut c = conn();
        let taps: Vec<String> = (0..7).map(|i| format!("TAP {}", i * 100)).collect();
        let mut lines: Vec<&str> = taps.iter().map(String::as_str).collect();
        lines.push("END 2000");
        assert_eq!(script(&mut c, &lines), ["ERR unknown-pattern"]);
    }

    #[test]
    fn run_over_buffers() {
        let input = b"MODE relaxed\nTEMPO 100\nTAP 0\nEND 400\n\nTAP 0\nTAP 100\nEND 400\n";
        let mut out = Vec::new();
        run_connection(Arc::new(canonical_german_table()), &input[..], &mut out).unwrap();
        assert_eq!(String::from_utf8(out).unwrap(), "TEXT e\nTEXT n\n");
    }
}
