// Counts the Tait colorings of the cube graph three ways: direct
// backtracking, the Heawood spin condition, and the face-matrix
// character sum.
#include "alpharep/tait.hpp"

#include <iostream>

int main() {
    using namespace alpharep;

    Graph cube{8, {{1, 2}, {2, 3}, {3, 4}, {1, 4}, {5, 6}, {6, 7}, {7, 8}, {5, 8},
                   {1, 5}, {2, 6}, {3, 7}, {4, 8}}};
    CubicPlanarGraph g = CubicPlanarGraph::from_rotation(
        cube, {{0, 8, 3}, {1, 9, 0}, {2, 10, 1}, {2, 3, 11},
               {4, 7, 8}, {5, 4, 9}, {10, 6, 5}, {6, 11, 7}});

    std::cout << "cube graph: " << g.face_count() << " faces\n";
    std::cout << "backtracking:   " << tait_count_direct(g) << "\n";
    std::cout << "Heawood spins:  " << heawood_count(g) << "\n";
    TaitEvalResult res = eval_tait_alpha(g);
    std::cout << "face-matrix sum: " << res.colorings << " (spin sum "
              << to_string(res.sum) << ")\n";
    return 0;
}
