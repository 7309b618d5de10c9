fn main() {
    // Wired up once the core modules land.
    eprintln!("hyperform: not yet implemented");
    std::process::exit(1);
}
