// Acceptance suite placeholder; populated once the library passes unit tests.
#include <cstdio>

int main() {
  std::puts("acceptance: suite not yet wired");
  return 1;
}
