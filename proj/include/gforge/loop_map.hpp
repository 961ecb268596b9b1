#pragma once

#include <string>
#include <vector>

#include "gforge/errors.hpp"

namespace gforge::topo {

// A multi-loop with transverse self-intersections as a 4-valent combinatorial
// map: vertex v has four half-edge slots 0..3 in counterclockwise rotation
// order, the loop runs straight through (slot s pairs with slot s+2), and
// the 2r edges pair up slots across vertices. Complement regions are the
// faces of the map; each is flagged capped (a disk of the complement) or
// boundary (an annulus retracting to a boundary component of the filled
// surface).
struct LoopMap {
  int r = 0;
  // edge e joins darts edges[e][0] and edges[e][1]; dart id = 4*vertex + slot.
  std::vector<std::array<int, 2>> edges;
  std::vector<int> capped_faces;  // canonical face ids

  int dart_count() const { return 4 * r; }
  static int vertex_of(int dart) { return dart / 4; }
  static int slot_of(int dart) { return dart % 4; }
  static int dart_id(int v, int s) { return 4 * v + s; }

  void validate() const;

  // Dart at the other end of the edge containing d.
  int mate(int dart) const;

  // The loop components as closed walks of "arrival darts": starting from an
  // arrival dart d (the walk enters vertex(d) through slot(d)), the walk
  // leaves through slot+2 and arrives at the mate of that dart. Exactly one
  // dart per edge is an arrival; orientations are chosen canonically
  // (smallest dart first).
  std::vector<std::vector<int>> component_walks() const;

  // Faces as orbits of the map traversal, in canonical order (each face
  // listed as the darts on its boundary walk). Face ids index this list.
  std::vector<std::vector<int>> faces() const;

  // Face id on the corner side between slots s and s+1 of vertex v.
  int face_at_corner(int v, int s) const;

  bool face_is_capped(int face_id) const;

  // Euler data of the filled surface: absolute characteristic
  // chi = r - #capped, plus (genus, boundary count) assuming the filled
  // surface is connected.
  struct EulerData {
    int chi = 0;
    int genus = 0;
    int boundary = 0;
    int faces = 0;
    int capped = 0;
  };
  EulerData euler() const;

  // Replace the crossing at vertex v by one of the two smoothings: the
  // oriented one ("first way") splices in1->out2 / in2->out1, the other
  // ("second way") caps in1/in2 together and out1/out2 together. Cap flags
  // are transported: two distinct capped regions merged through the corridor
  // stay capped, a region merged with itself loses the flag.
  LoopMap remove_intersection(int v, bool first_way) const;

  std::string to_json() const;
  static LoopMap from_json(const std::string& text);
  static LoopMap load(const std::string& path);
  void save(const std::string& path) const;
};

}  // namespace gforge::topo
