//! Running checks through the request layer and serializing the reports.

use symdual::cli::{paper_all, CheckName, CheckRequest, Params, Profile};
use symdual::report::CheckReport;

fn main() {
    let req = CheckRequest::new(CheckName::Prform, Params { k: Some(2), n: Some(4), rcap: Some(3), ..Params::default() });
    let report = req.run();
    let json = report.to_json();
    println!("{json}");
    assert_eq!(CheckReport::from_json(&json).unwrap(), report);

    for c in paper_all(Profile::Default) {
        println!("criterion {} ({}): {} checks", c.id, c.title, c.checks.len());
    }
}
