import sys

from fermion_entropy.cli import main

if __name__ == "__main__":
    sys.exit(main())
