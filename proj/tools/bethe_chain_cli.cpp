#include <cstdio>

int main() {
  std::puts("bethe-chain: CLI under construction");
  return 0;
}
