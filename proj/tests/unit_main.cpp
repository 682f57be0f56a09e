#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <multsum/parallel.hpp>

int main(int argc, char** argv) {
  multsum::set_worker_threads(2);
  doctest::Context context;
  context.applyCommandLine(argc, argv);
  return context.run();
}
