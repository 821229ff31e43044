fn main() {
    // CLI wiring lands with the harness module.
    eprintln!("gacl: not yet wired");
    std::process::exit(2);
}
