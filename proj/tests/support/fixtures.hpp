#pragma once

// Hand-encoded diagrams shared by the unit and acceptance suites.

#include <string_view>

namespace spinecert::fixtures {

inline constexpr std::string_view unknot = R"(link n=1
loop 1: 1
)";

// standard trefoil, every crossing positive
inline constexpr std::string_view trefoil = R"(link n=1
loop 1: 1 2 3 4 5 6
X 1 1 5 2 4 over=d
X 2 3 1 4 6 over=d
X 3 5 3 6 2 over=d
)";

inline constexpr std::string_view figure_eight = R"(link n=1
loop 1: 1 2 3 4 5 6 7 8
X 1 4 2 5 1 over=d
X 2 8 6 1 5 over=d
X 3 6 3 7 4 over=b
X 4 2 7 3 8 over=b
)";

inline constexpr std::string_view hopf = R"(link n=2
loop 1: 1 2
loop 2: 3 4
X 1 1 4 2 3 over=d
X 2 4 1 3 2 over=d
)";

inline constexpr std::string_view split_unlink = R"(link n=2
loop 1: 1
loop 2: 2
)";

inline constexpr std::string_view whitehead = R"(link n=2
loop 1: 1 2 3 4
loop 2: 5 6 7 8 9 10
X 1 6 1 7 2 over=b
X 2 10 7 5 8 over=b
X 3 4 5 1 6 over=b
X 4 2 10 3 9 over=d
X 5 8 4 9 3 over=d
)";

inline constexpr std::string_view spine_round = R"(spine g=1
loop 1: 1
arc 1: 2
wedge: 2
)";

inline constexpr std::string_view spine_trefoil = R"(spine g=1
loop 1: 1 2 3 4 5 6 7
arc 1: 8
wedge: 8
X 1 1 5 2 4 over=d
X 2 3 7 4 6 over=d
X 3 5 3 6 2 over=d
)";

inline constexpr std::string_view spine_standard_2 = R"(spine g=2
loop 1: 1
loop 2: 2
arc 1: 3
arc 2: 4
wedge: 3 4
)";

// two loops forming a positive Hopf link, arcs in the outer face
inline constexpr std::string_view spine_hopf = R"(spine g=2
loop 1: 1 2 7
loop 2: 3 4 8 side=right
arc 1: 5
arc 2: 6
wedge: 5 6
X 1 1 4 2 3 over=d
X 2 4 7 8 2 over=d
)";

inline constexpr std::string_view triple_edge = R"(link n=1
loop 1: 1 2 3 4 5 6
X 1 1 5 2 4 over=d
X 2 3 1 4 6 over=d
X 3 5 3 6 5 over=d
)";

}  // namespace spinecert::fixtures
