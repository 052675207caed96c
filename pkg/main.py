"""Main entry point for the application."""

from frenet4.cli.app import cli


def main():
    """Run the frenet4 command line."""
    cli(prog_name="frenet4")


if __name__ == "__main__":
    main()
