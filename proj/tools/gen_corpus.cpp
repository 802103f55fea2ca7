// Writes the bundled derivations and certificates as JSON files into the given directory.

#include <iostream>
#include <string>

#include "biskt/corpus.hpp"
#include "biskt/io.hpp"

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: biskt_gen_corpus DIR\n";
    return 2;
  }
  std::string dir = argv[1];
  for (auto const& [name, d] : biskt::corpus::derivations())
    biskt::io::write_text_file(dir + "/" + name + ".derivation.json", biskt::io::derivation_to_json(d).dump(2) + "\n");
  for (auto const& [name, c] : biskt::corpus::certificates())
    biskt::io::write_text_file(dir + "/" + name + ".certificate.json", biskt::io::certificate_to_json(c).dump(2) + "\n");
  return 0;
}
