// Computes the index of the basic loop in Λ(1) three ways, then the
// Hörmander index of four lines in R².

#include "maslov/maslov.hpp"

#include <iostream>

int main() {
    using namespace maslov;

    const auto loop = random::generator_loop(1, 1);
    const LagrangianPath gamma = sample_path(loop.evaluator(), true);
    const auto vertical = LagrangianFrame::vertical(1);

    std::cout << "winding:        " << winding_index(gamma) << "\n";
    std::cout << "crossing index: " << crossing_index(gamma, vertical) << "\n";
    for (const CrossingEvent& e : crossing_details(gamma, vertical).events) {
        std::cout << "  crossing at t=" << e.t_star << " dim " << e.crossing_dim << " jump " << e.jump << "\n";
    }

    Mat a(2, 1), ap(2, 1), b(2, 1), bp(2, 1);
    a << 0, 1;   // x = 0
    ap << 1, 1;  // x = ξ
    b << 1, 0;   // ξ = 0
    bp << 1, 2;  // ξ = 2x
    const LagrangianFrame fa(a), fap(ap), fb(b), fbp(bp);
    std::cout << "s(a, a'; b, b') signature: " << hormander_index(fa, fap, fb, fbp, HormanderMethod::Signature)
              << ", path: " << hormander_index(fa, fap, fb, fbp, HormanderMethod::Path) << "\n";
    std::cout << "holonomy of that loop: i^" << holonomy_value(winding_index(gamma)).exponent_of_i() << "\n";
}
