"""Regenerate the packaged example data from the builders in ologwd.examples."""

from ologwd.examples import write_all

if __name__ == "__main__":
    for p in write_all():
        print(p)
