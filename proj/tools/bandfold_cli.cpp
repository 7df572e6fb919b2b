// Placeholder main; subcommands are added as the library comes together.
int main() { return 0; }
