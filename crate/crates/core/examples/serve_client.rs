//! Starts the line-protocol server on a free port and replays a tapped word
//! as a client would.

use std::io::{BufRead, BufReader, Write};
use std::net::{TcpListener, TcpStream};
use std::sync::Arc;
use std::thread;

use tapcode::serve::serve;
use tapcode::{canonical_german_table, encode, EncodeOptions, TapSession};

fn main() -> std::io::Result<()> {
    let table = canonical_german_table();
    let stream = encode("klopf", &table, &EncodeOptions::default()).unwrap();
    let session = TapSession::from_stream(&stream, 125).unwrap();

    let listener = TcpListener::bind("127.0.0.1:0")?;
    let addr = listener.local_addr()?;
    thread::spawn(move || serve(listener, Arc::new(table)));

    let mut conn = TcpStream::connect(addr)?;
    let reader = BufReader::new(conn.try_clone()?);
    let mut script = vec!["MODE relaxed".to_string()];
    script.extend(
        session
            .events()
            .iter()
            .map(|e| format!("TAP {}", e.onset_ms)),
    );
    script.push(format!("END {}", session.end_ms()));
    for line in &script {
        println!("> {line}");
        writeln!(conn, "{line}")?;
    }
    for line in reader.lines() {
        let line = line?;
        println!("< {line}");
        if line.starts_with("TEXT") || line.starts_with("ERR") {
            break;
        }
    }
    Ok(())
}
