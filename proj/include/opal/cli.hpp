#pragma once

namespace opal {

// Batch command-line frontend.  Returns the process exit code:
//   0  the requested computation/certificate succeeded,
//   1  a negative verdict (non-confluent system, failed relation check, ...),
//   2  usage, parse, or semantic input errors.
int run_cli(int argc, char** argv);

}  // namespace opal
