#include <pfxauth/logfile.hpp>
#include <pfxauth/logfile.hpp>
