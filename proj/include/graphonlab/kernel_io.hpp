#pragma once

#include <filesystem>
#include <iosfwd>

#include "graphonlab/kernel.hpp"

namespace graphonlab {

// Step kernel file:   "m bound", then m rows of m values.
// k-digraphon file:   "k m", then k blocks of m rows of m values.
// Kernels on unequal partitions append their m-1 interior breakpoints to the
// header line. Values are written with 17 significant digits, so a save/load
// cycle reproduces the object exactly.

StepKernel read_step_kernel(std::istream& in);
StepKernel load_step_kernel(const std::filesystem::path& path);
void write_step_kernel(std::ostream& out, const StepKernel& W);
void save_step_kernel(const std::filesystem::path& path, const StepKernel& W);

KDigraphon read_digraphon(std::istream& in);
KDigraphon load_digraphon(const std::filesystem::path& path);
void write_digraphon(std::ostream& out, const KDigraphon& W);
void save_digraphon(const std::filesystem::path& path, const KDigraphon& W);

}  // namespace graphonlab
