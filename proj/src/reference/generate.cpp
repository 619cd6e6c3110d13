#include <algorithm>
#include <deque>

#include "packlab/error.hpp"
#include "packlab/reference.hpp"

namespace packlab::reference {

PackingRun generate(const DescartesQuadruple& root, i128 t) {
  int negatives = 0;
  for (i128 v : root.k) {
    if (v == 0) throw Error(ErrorCode::unbounded_root, "root contains a line (zero curvature)");
    if (v < 0) ++negatives;
  }
  if (negatives != 1) throw Error(ErrorCode::unbounded_root, "root must have exactly one negative curvature");
  if (!satisfies_descartes(root) || !satisfies_extended(root)) {
    throw Error(ErrorCode::invalid_input, "root is not a Descartes quadruple");
  }
  if (t < *std::max_element(root.k.begin(), root.k.end())) {
    throw Error(ErrorCode::invalid_input, "threshold below the largest root curvature");
  }

  PackingRun run;
  run.root = root;
  run.max_curvature = t;
  for (int i = 0; i < 4; ++i) run.circles.push_back({root.k[i], root.w[i], 0});

  struct Node {
    DescartesQuadruple q;
    int last;
    int depth;
  };
  std::deque<Node> queue{{root, -1, 0}};
  while (!queue.empty()) {
    const Node node = queue.front();
    queue.pop_front();
    for (int i = 0; i < 4; ++i) {
      if (i == node.last) continue;
      DescartesQuadruple child = reflect(node.q, i);
      if (child.k[i] > t) continue;
      run.circles.push_back({child.k[i], child.w[i], node.depth + 1});
      queue.push_back({child, i, node.depth + 1});
    }
  }

  std::sort(run.circles.begin(), run.circles.end(), [](const PackedCircle& a, const PackedCircle& b) {
    if (canonical_less(a, b)) return true;
    if (canonical_less(b, a)) return false;
    return a.word_len < b.word_len;
  });
  run.circles.erase(std::unique(run.circles.begin(), run.circles.end(),
                                [](const PackedCircle& a, const PackedCircle& b) {
                                  return a.curvature == b.curvature && a.curvature_center == b.curvature_center;
                                }),
                    run.circles.end());
  return run;
}

}  // namespace packlab::reference
