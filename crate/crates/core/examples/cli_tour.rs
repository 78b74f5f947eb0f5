//! Drive the command-line interface in-process.

fn main() {
    let runs: &[&[&str]] = &[
        &["core", "-p", "5", "12,11,7,6,4,2,1"],
        &["scopes", "-p", "5", "-i", "0", "12,7,6,2,1"],
        &["allowed", "-p", "5", "-i", "1", "-w", "2", "2:0,3:0"],
        &["reduce", "-p", "5", "-w", "1", "3:0,2:1"],
        &["bound", "-p", "5", "-w", "2", "--format", "json"],
        &[
            "level-matrix",
            "-p",
            "7",
            "--lo",
            "-1",
            "--hi",
            "1",
            "--format",
            "csv",
        ],
        &["bound", "-p", "5", "-w", "0"],
    ];
    for args in runs {
        println!("$ spinblock {}", args.join(" "));
        let argv = std::iter::once("spinblock").chain(args.iter().copied());
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = spinblock::cli::run(argv, &mut out, &mut err);
        print!(
            "{}{}",
            String::from_utf8_lossy(&out),
            String::from_utf8_lossy(&err)
        );
        println!("[exit {code}]\n");
    }
}
