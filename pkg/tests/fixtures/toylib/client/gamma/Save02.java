public class Save02 {
    void save(OutputStream out) {
        Workbook wb = new HSSFWorkbook();
        try {
            wb.write(out);
        } catch (IOException e) {
            
        }
    }
}
