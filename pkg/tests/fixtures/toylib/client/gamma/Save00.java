public class Save00 {
    void save(OutputStream out) {
        Workbook wb = new HSSFWorkbook();
        try {
            wb.write(out);
        } catch (IOException e) {
            e.printStackTrace();
        }
    }
}
