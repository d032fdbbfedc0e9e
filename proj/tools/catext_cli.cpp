#include <cstdio>
int main(){ std::puts("catext cli placeholder"); return 0; }
