fn main() {
    pinwheel_forge::cli::main()
}
