// stabmod CLI: exact invariants of translation-invariant Pauli stabilizer
// codes.  Subcommands are filled in as the library grows; this placeholder
// keeps the build wired end to end.
#include <iostream>

#include "stabmod/zoo.hpp"

int main(int argc, char** argv) {
  (void)argc;
  (void)argv;
  std::cout << "stabmod: subcommands not wired yet; available zoo codes:";
  for (const auto& n : stabmod::zoo_names()) std::cout << ' ' << n;
  std::cout << '\n';
  return 1;
}
