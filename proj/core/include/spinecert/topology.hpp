#pragma once

// Rotation systems, face tracing and the validator.
//
// Planarity is certified locally: the diagram already carries a rotation at
// every crossing and vertex, so tracing faces and checking V - E + F = 2 on
// each connected piece is enough. A crossing-free closed component counts as
// one vertex, one edge and two faces.

#include <string>
#include <vector>

#include "spinecert/diagram.hpp"

namespace spinecert {

/// An edge traversed with the face on its left; `forward` follows the edge's
/// orientation.
struct Dart {
  int edge = 0;
  bool forward = true;
  bool operator==(const Dart&) const = default;
};

struct Face {
  std::vector<Dart> darts;
  int piece = 0;
};

enum class NodeKind { crossing, wedge, attachment };

struct Node {
  NodeKind kind = NodeKind::crossing;
  int id = 0;  // crossing id, or loop index for an attachment vertex
  struct End {
    int edge = 0;
    bool head = false;  // the edge ends here (true) or starts here (false)
  };
  std::vector<End> rotation;  // counterclockwise
};

/// Placement of every edge end; requires a structurally consistent diagram.
struct Embedding {
  std::vector<Node> nodes;
  struct Ends {
    int head_node = -1, head_slot = -1;
    int tail_node = -1, tail_slot = -1;
  };
  std::vector<Ends> ends;          // indexed by edge id
  std::vector<int> free_circles;   // closed edges with no ends
  std::vector<int> edges;          // every edge id, ascending
};

Embedding embed(const Diagram& d);

struct FaceStructure {
  std::vector<Face> faces;
  std::vector<int> piece_of_node;
  int pieces = 0;
  std::vector<int> vertices_per_piece;
  std::vector<int> edges_per_piece;
  std::vector<int> faces_per_piece;
};

FaceStructure trace_faces(const Diagram& d, const Embedding& emb);
FaceStructure trace_faces(const Diagram& d);

struct ValidationReport {
  std::vector<std::string> entries;
  int vertices = 0;
  int edges = 0;
  int faces = 0;
  int pieces = 0;
  bool planar_checked = false;
  bool normal_form = false;

  bool ok() const noexcept { return entries.empty(); }
};

ValidationReport validate(const Diagram& d);

}  // namespace spinecert
