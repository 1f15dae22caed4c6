#pragma once

#include "twistbench/groupoid.hpp"

namespace twistbench::corpus {

GroupTable cyclic_group(int n);
GroupTable klein_group();
GroupTable symmetric_group3();
GroupTable direct_product(const GroupTable& a, const GroupTable& b);

// elements of G under the right action x·g = g⁻¹xg
GradedGroupoid conjugation_groupoid(const GroupTable& g);
std::vector<int> sign_character(const GroupTable& s3);

// swap on two points, as a Real structure on the discrete groupoid {a,b}
RealStructure two_point_swap();
RealStructure trivial_real_structure(const GroupoidPtr& g);

struct NamedGroupoid {
    std::string name;
    GroupoidPtr groupoid;
};

// point, pair, BZ2 (both gradings), B(Z2×Z2), BS3, Gr of the 2-point swap,
// Z2⫽Z2 and S3⫽S3
std::vector<NamedGroupoid> standard_corpus();

}  // namespace twistbench::corpus
