#![no_main]

use frobsat_cli::parse_session;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(session) = parse_session(text) else { return };
    let printed = session.to_string();
    let again = parse_session(&printed).expect("printed session must parse");
    assert_eq!(again, session);
    assert_eq!(again.to_string(), printed);
});
