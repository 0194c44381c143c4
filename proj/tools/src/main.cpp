#include <morfwork_tools/cli.hpp>

#include <iostream>

int main(int argc, char** argv)
{
	return morfwork::tools::runCli(argc, argv, std::cout, std::cerr, std::cin);
}
