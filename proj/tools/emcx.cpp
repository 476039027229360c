// placeholder during bring-up
#include <cstdio>
int main() { std::puts("emcx cli not wired yet"); return 2; }
