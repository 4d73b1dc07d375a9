"""Parse a small Turtle document and look at the precomputed statistics.
=======================================================================

Snapshots are immutable: duplicates are dropped, blank node labels get a
canonical fresh sequence, and the stats block is recomputable from the
distinct statements.
"""

from kgqa.snapshot import snapshot_from_turtle

DOC = """
@prefix ex: <http://shop.example.com/> .
@prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .

ex:store_Vienna a ex:Store ;
    rdfs:label "Vienna flagship"@en , "Flagship Wien"@de ;
    ex:manager [ ex:name "R. Ortner" ] ;
    ex:stockCount 1240 .

ex:store_Graz a ex:Store ;
    rdfs:label "Graz south"@en ;
    ex:stockCount "n/a" .
"""

snapshot, errors = snapshot_from_turtle(DOC, kg_id="shops")
print(f"parsed {snapshot.stats.triple_count} statements, {len(errors)} recovered errors")
print(f"typed instances:   {snapshot.stats.typed_instance_count}")
print(f"blank nodes:       {snapshot.stats.blank_node_count}")
print(f"label languages:   {sorted(snapshot.stats.label_languages)}")
print(f"literals by type:  {snapshot.stats.literals_by_datatype}")
print()
print("canonical export (stable byte-for-byte):")
print(snapshot.serialize())
