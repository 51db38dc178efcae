"""Regenerate the bundled ainfctl/1 fixture documents.

Run from the repository root:  python3 scripts/gen_fixtures.py
"""

import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from ainfkit import models
from ainfkit.specio import FORMAT, dump_document

OUT = os.path.join(os.path.dirname(__file__), "..", "src", "ainfkit", "fixtures")


def doc(**sections):
    return {"format": FORMAT, **sections}


def emb_pair(emb_a, emb_b):
    return {"A": emb_a.to_json(), "B": emb_b.to_json()}


def write(name, document):
    path = os.path.join(OUT, name)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dump_document(document))
    print("wrote", os.path.relpath(path))


def main():
    os.makedirs(OUT, exist_ok=True)

    t2 = models.derham_model(2, 1)
    write("derham_t2.json", doc(algebra=t2.to_json()))
    write("derham_t1.json", doc(algebra=models.derham_model(1, 1).to_json()))

    emb_a, emb_b = models.derham_factor_embeddings(1, 1, 1)
    write("kunneth_derham.json",
          doc(algebra=emb_a.target.to_json(), embeddings=emb_pair(emb_a, emb_b)))

    min_a, min_b = models.derham_factor_embeddings(1, 1, 1, target=t2,
                                                   factor_w=0)
    write("kunneth_minimal.json",
          doc(algebra=t2.to_json(), embeddings=emb_pair(min_a, min_b)))

    two = models.two_factor_gapped()
    b_combined = two["embA"].apply(two["b1"]) + two["embB"].apply(two["b2"])
    write("gapped_product.json",
          doc(algebra=two["C"].to_json(),
              embeddings=emb_pair(two["embA"], two["embB"]),
              bounding={"b1": two["b1"].to_json(),
                        "b2": two["b2"].to_json(),
                        "b": b_combined.to_json()}))

    bar_alg, bar_b = models.barcode_fixture()
    write("barcode_simple.json",
          doc(algebra=bar_alg.to_json(), bounding={"b": bar_b.to_json()}))

    ext = models.extension_fixture()
    write("isotopy_extend.json",
          doc(algebra=ext["m0"].to_json(),
              isotopy=ext["P"].to_json(),
              extension={"m1": ext["m1"].to_json()}))

    chain = models.chain_fixture()
    write("isotopy_chain.json",
          doc(algebra=chain["m0"].to_json(),
              chain=[{"m": m.to_json(), "isotopy": p.to_json()}
                     for m, p in chain["chain"]]))

    com = models.commuting_isotopy_fixture()
    write("commuting_isotopy.json",
          doc(algebra=com["m0C"].to_json(),
              embeddings=emb_pair(com["embA"], com["embB"]),
              isotopy=com["PC"].to_json(),
              factor_isotopies={"A": com["PA"].to_json(),
                                "B": com["PB"].to_json()},
              extension={"m1": com["m1C"].to_json()}))


if __name__ == "__main__":
    main()
