from psr.main import main

main()
