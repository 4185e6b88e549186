#include <iostream>
#include "upcert/parse.hpp"
#include "upcert/structure.hpp"
int main() { std::cout << upcert::build_structure(upcert::parse_poly("z^4 - 2z^2")).t << "\n"; }
