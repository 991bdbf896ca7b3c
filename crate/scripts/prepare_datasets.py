#!/usr/bin/env python3
"""Convert public datasets into the edge-list / label formats read by tempnet.

Edge lists are written as `source target timestamp` lines, labels as
`node,label` CSV.

    prepare_datasets.py primary-school SOURCE [--out data/primary-school]
    prepare_datasets.py movielens SOURCE [--out data/movielens]

SOURCE for primary-school is the SocioPatterns contact file
(`t i j Ci Cj`, whitespace separated) or any zip/wheel containing a file
named `Primary_School.csv` in that format.

SOURCE for movielens is a directory holding either the MovieLens 1M files
(`ratings.dat`, `movies.dat`) or the MovieLens 100K files (`u.data`,
`u.item`, or the atomic `ml-100k.inter` / `ml-100k.item` pair), or a
zip/wheel containing one of those sets. Only ratings of 1 or 2 stars on
movies whose single genre is Action, Comedy, Documentary, Drama, Horror or
Thriller are kept. Timestamps become whole days since the epoch.
"""

import argparse
import io
import sys
import zipfile
from pathlib import Path

GENRES = ["Action", "Comedy", "Documentary", "Drama", "Horror", "Thriller"]
ML100K_GENRES = [
    "unknown", "Action", "Adventure", "Animation", "Children's", "Comedy",
    "Crime", "Documentary", "Drama", "Fantasy", "Film-Noir", "Horror",
    "Musical", "Mystery", "Romance", "Sci-Fi", "Thriller", "War", "Western",
]
DAY = 86400


class Source:
    """Reads named files from a directory or an archive."""

    def __init__(self, path):
        self.path = Path(path)
        self.zip = zipfile.ZipFile(self.path) if self.path.is_file() and zipfile.is_zipfile(self.path) else None

    def find(self, name):
        if self.zip is not None:
            for entry in self.zip.namelist():
                if entry.rsplit("/", 1)[-1] == name:
                    return entry
            return None
        if self.path.is_file():
            return str(self.path) if self.path.name == name else None
        hits = sorted(self.path.rglob(name))
        return str(hits[0]) if hits else None

    def read(self, entry, encoding="utf-8"):
        if self.zip is not None:
            return io.TextIOWrapper(self.zip.open(entry), encoding=encoding, errors="replace").read()
        return Path(entry).read_text(encoding=encoding, errors="replace")


def primary_school(src, out):
    source = Source(src)
    entry = source.find("Primary_School.csv") or source.find("primaryschool.csv")
    if entry is None and source.zip is None and source.path.is_file():
        entry = str(source.path)
    if entry is None:
        sys.exit(f"no Primary School contact file in {src}")
    edges, labels = [], {}
    for line in source.read(entry).splitlines():
        parts = line.split()
        if len(parts) < 5:
            continue
        t, i, j, ci, cj = parts[:5]
        edges.append(f"{i} {j} {t}")
        labels[i] = ci
        labels[j] = cj
    write(out, edges, labels)


def movielens(src, out):
    source = Source(src)
    if source.find("ratings.dat"):
        movies = {}
        for line in source.read(source.find("movies.dat"), "latin-1").splitlines():
            mid, _title, genres = line.split("::")
            movies[mid] = genres.split("|")
        ratings = (line.split("::") for line in source.read(source.find("ratings.dat")).splitlines())
    elif source.find("u.data"):
        movies = {}
        for line in source.read(source.find("u.item"), "latin-1").splitlines():
            parts = line.split("|")
            flags = parts[-19:]
            movies[parts[0]] = [g for g, f in zip(ML100K_GENRES, flags) if f == "1"]
        ratings = (line.split("\t") for line in source.read(source.find("u.data")).splitlines())
    elif source.find("ml-100k.inter"):
        movies = {}
        lines = source.read(source.find("ml-100k.item"), "latin-1").splitlines()
        header = lines[0].split("\t")
        genre_col = next(k for k, h in enumerate(header) if h.startswith("class"))
        for line in lines[1:]:
            parts = line.split("\t")
            movies[parts[0]] = parts[genre_col].split()
        lines = source.read(source.find("ml-100k.inter")).splitlines()
        ratings = (line.split("\t") for line in lines[1:])
    else:
        sys.exit(f"no MovieLens ratings in {src}")

    edges, labels = [], {}
    for row in ratings:
        if len(row) < 4:
            continue
        user, movie, rating, ts = row[:4]
        genres = movies.get(movie, [])
        if float(rating) > 2 or len(genres) != 1 or genres[0] not in GENRES:
            continue
        edges.append(f"u{user} m{movie} {int(ts) // DAY}")
        labels[f"u{user}"] = "User"
        labels[f"m{movie}"] = genres[0]
    write(out, edges, labels)


def write(out, edges, labels):
    out = Path(out)
    out.mkdir(parents=True, exist_ok=True)
    (out / "edges.txt").write_text("\n".join(edges) + "\n")
    (out / "labels.csv").write_text("".join(f"{n},{l}\n" for n, l in sorted(labels.items())))
    print(f"{out}: {len(edges)} edge lines, {len(labels)} labelled nodes")


def main():
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("dataset", choices=["primary-school", "movielens"])
    parser.add_argument("source")
    parser.add_argument("--out")
    args = parser.parse_args()
    root = Path(__file__).resolve().parent.parent / "data"
    if args.dataset == "primary-school":
        primary_school(args.source, args.out or root / "primary-school")
    else:
        movielens(args.source, args.out or root / "movielens")


if __name__ == "__main__":
    main()
