#include <iostream>

#include <spinecert/format.hpp>
#include <spinecert/seifert.hpp>

int main() {
  auto d = spinecert::parse_link("link n=1\nloop 1: 1 2 3 4 5 6\nX 1 1 5 2 4 over=d\nX 2 3 1 4 6 over=d\nX 3 5 3 6 2 over=d\n");
  auto s = spinecert::build_surface(d, spinecert::seifert_circles(d));
  std::cout << "genus=" << s.pieces.at(0).genus << '\n';
}
