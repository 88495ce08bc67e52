import sys

from equitheta.main import main

if __name__ == "__main__":
    sys.exit(main())
