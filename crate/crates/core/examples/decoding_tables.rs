//! Derives Bob's decoding table for each protocol and encoding by exact
//! enumeration of honest rounds.
//!
//! cargo run -p ghz-qsdc --example decoding_tables

use ghz_qsdc::harness::emit_tables;

fn main() -> ghz_qsdc::Result<()> {
    for report in emit_tables()? {
        println!("{}", report.render());
    }
    Ok(())
}
